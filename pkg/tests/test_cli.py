import json

import pytest

from tourlab import cli
from tourlab.cli import (
    EXIT_CAP,
    EXIT_FALSE,
    EXIT_OK,
    EXIT_USAGE,
    TrnParseError,
    catalog_tournament,
    emit_dot,
    emit_trn,
    parse_trn,
    run_census,
    run_census_unlabeled,
    unlabeled_representatives,
)
from tourlab.construct import double, y2
from tourlab.core import Tournament, three_cycle, transitive_order


class TestTrnFormat:
    def test_emit_parse_roundtrip(self):
        for t in (three_cycle(), y2(), transitive_order(5), double(y2())):
            assert parse_trn(emit_trn(t)) == t

    def test_canonical_example(self):
        # row 0 covers pairs (0,1),(0,2); row 1 covers (1,2)
        assert emit_trn(three_cycle()) == "TRN 1\nn=3\n10\n1\n"

    def test_comments_and_blanks_dropped(self):
        text = "TRN 1\n# a comment\nn=3\n\n10\n# another\n1\n"
        assert parse_trn(text) == three_cycle()
        # emit(parse) canonicalizes
        assert emit_trn(parse_trn(text)) == emit_trn(three_cycle())

    def test_single_vertex(self):
        from tourlab.core import trivial

        assert parse_trn("TRN 1\nn=1\n") == trivial()

    def test_bad_header(self):
        with pytest.raises(TrnParseError) as exc:
            parse_trn("TRN 2\nn=2\n1\n")
        assert exc.value.line == 1

    def test_bad_row_length_reports_line(self):
        with pytest.raises(TrnParseError) as exc:
            parse_trn("TRN 1\nn=3\n1\n0\n")
        assert exc.value.line == 3

    def test_bad_character(self):
        with pytest.raises(TrnParseError):
            parse_trn("TRN 1\nn=3\n1x\n0\n")

    def test_missing_rows(self):
        with pytest.raises(TrnParseError):
            parse_trn("TRN 1\nn=4\n111\n00\n")


class TestCatalog:
    def test_names(self):
        assert catalog_tournament("C3") == three_cycle()
        assert catalog_tournament("order4") == transitive_order(4)
        assert catalog_tournament("Y2") == y2()
        assert catalog_tournament("Z5[1,2]").n == 5
        assert catalog_tournament("Z7").n == 7

    def test_group_specs(self):
        from tourlab.grouptour import FiniteAbelianGroup, parse_group_spec

        assert parse_group_spec("Z3^2") == FiniteAbelianGroup((3, 3))
        assert parse_group_spec("Z5xZ7") == FiniteAbelianGroup((5, 7))
        assert parse_group_spec("Z3^2xZ5") == FiniteAbelianGroup((3, 3, 5))
        t = catalog_tournament("Z3^2[1,3,4,5]")
        assert t.n == 9
        from tourlab.core import is_regular

        assert is_regular(t)

    def test_unknown(self):
        from tourlab.core import TournamentError

        with pytest.raises(TournamentError):
            catalog_tournament("nope")
        with pytest.raises(TournamentError):
            catalog_tournament("Z5xZ7")  # product groups need explicit games


class TestCommands:
    def run(self, argv, capsys):
        code = cli.main(argv)
        out = capsys.readouterr().out
        return code, out

    def test_gen_y2(self, capsys):
        code, out = self.run(["gen", "y2"], capsys)
        assert code == EXIT_OK
        assert parse_trn(out) == y2()

    def test_gen_deterministic(self, capsys):
        code1, out1 = self.run(["gen", "dyadic", "--depth", "4", "--epsilon", "00"], capsys)
        code2, out2 = self.run(["gen", "dyadic", "--depth", "4", "--epsilon", "00"], capsys)
        assert code1 == code2 == EXIT_OK
        assert out1 == out2
        assert parse_trn(out1).n == 16

    def test_gen_double_from_file(self, tmp_path, capsys):
        p = tmp_path / "c3.trn"
        p.write_text(emit_trn(three_cycle()))
        code, out = self.run(["gen", "double", "--in", str(p)], capsys)
        assert code == EXIT_OK
        assert parse_trn(out).n == 7

    def test_gen_tower_specs(self, capsys):
        code, out = self.run(["gen", "tower", "--spec", "base=C3; fibers=C3", "--depth", "2"], capsys)
        assert code == EXIT_OK and parse_trn(out).n == 9
        code, out = self.run(
            ["gen", "tower", "--spec", "theta=10; Y0=C3; Y1=Z5[1,2]", "--depth", "2"], capsys
        )
        assert code == EXIT_OK and parse_trn(out).n == 15

    def test_gen_attach_reproduces_add_pair(self, tmp_path, capsys):
        from tourlab.construct import add_pair
        from tourlab.core import vset

        z5 = catalog_tournament("Z5[1,2]")
        arc = catalog_tournament("arc")
        yp = tmp_path / "y.trn"
        xp = tmp_path / "x.trn"
        yp.write_text(emit_trn(arc))
        xp.write_text(emit_trn(z5))
        code, out = self.run(
            [
                "gen", "attach",
                "--y", str(yp), "--x", str(xp),
                "--parts", "0|1",
                "--es", "0,1,2|3,4",
            ],
            capsys,
        )
        assert code == EXIT_OK
        assert parse_trn(out) == add_pair(z5, vset([0, 1, 2]))

    def test_analyze_y2(self, tmp_path, capsys):
        p = tmp_path / "y2.trn"
        p.write_text(emit_trn(y2()))
        code, out = self.run(["analyze", str(p), "--props", "prime,arccyclic", "--json"], capsys)
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["prime"] is True and report["arccyclic"] is False

    def test_analyze_c3(self, tmp_path, capsys):
        p = tmp_path / "c3.trn"
        p.write_text(emit_trn(three_cycle()))
        code, out = self.run(["analyze", str(p), "--props", "prime,regular"], capsys)
        assert code == EXIT_OK
        assert "prime=True" in out and "regular=True" in out

    def test_analyze_order4_not_prime(self, tmp_path, capsys):
        p = tmp_path / "o4.trn"
        p.write_text(emit_trn(transitive_order(4)))
        code, out = self.run(["analyze", str(p), "--props", "prime", "--json"], capsys)
        assert json.loads(out)["prime"] is False

    def test_classify_json_schema(self, tmp_path, capsys):
        from tourlab.construct import FiberAssignment, lex_product
        from tourlab.core import arc_tournament

        prod, _ = lex_product(
            FiberAssignment(arc_tournament(), {0: three_cycle(), 1: three_cycle()})
        )
        p = tmp_path / "t.trn"
        p.write_text(emit_trn(prod))
        code, out = self.run(["classify", str(p)], capsys)
        assert code == EXIT_OK
        tree = json.loads(out)
        assert tree["kind"] == "order"
        assert [c["vertex"] for c in tree["children"]] == [0, 1]
        for child in tree["children"]:
            assert child["tree"]["kind"] == "prime"
            assert parse_trn(child["tree"]["base"]) == three_cycle()

    def test_iso_exit_codes(self, tmp_path, capsys):
        a = tmp_path / "a.trn"
        b = tmp_path / "b.trn"
        a.write_text(emit_trn(cli.catalog_tournament("Z5[1,2]")))
        b.write_text(emit_trn(double(cli.catalog_tournament("arc"))))
        code, out = self.run(["iso", str(a), str(b)], capsys)
        assert code == EXIT_OK and out.startswith("isomorphic")
        c = tmp_path / "c.trn"
        c.write_text(emit_trn(transitive_order(5)))
        code, _ = self.run(["iso", str(a), str(c)], capsys)
        assert code == EXIT_FALSE

    def test_census_order4(self, capsys):
        code, out = self.run(
            ["census", "--order", "4", "--predicate", "prime,strongly-connected"], capsys
        )
        assert code == EXIT_OK
        assert "total=64" in out
        assert "prime=0 of 64" in out
        assert "strongly-connected=24 of 64" in out

    def test_census_parallel_merge(self):
        seq = run_census(4, ["strongly-connected"], jobs=1)
        par = run_census(4, ["strongly-connected"], jobs=2)
        assert seq == par

    def test_census_counts_relabeling_invariant(self):
        # spot-check: counting P(t) equals counting P(relabeled t)
        from oracles import relabel
        from tourlab.cli import PREDICATES

        perm = [2, 0, 3, 1]
        for pred in ("prime", "strongly-connected", "regular"):
            fn = PREDICATES[pred]
            direct = sum(1 for c in range(64) if fn(Tournament.from_code(4, c)))
            twisted = sum(
                1 for c in range(64) if fn(relabel(Tournament.from_code(4, c), perm))
            )
            assert direct == twisted

    def test_census_cap(self, capsys):
        code, _ = self.run(["census", "--order", "9"], capsys)
        assert code == EXIT_CAP

    def test_census_order5_strong_count(self):
        # labeled strongly connected tournaments: 2, 24, 544 for n = 3, 4, 5
        assert run_census(3, ["strongly-connected"])["strongly-connected"] == 2
        assert run_census(5, ["strongly-connected"])["strongly-connected"] == 544

    def test_epsilon_parse_errors(self):
        from tourlab.core import TournamentError
        from tourlab.grouptour import EpsilonWord

        with pytest.raises(TournamentError):
            EpsilonWord.parse("012")
        assert str(EpsilonWord.parse("0101")) == "0101"
        assert EpsilonWord.parse("").is_zero()

    def test_census_unlabeled(self, capsys):
        code, out = self.run(["census", "--order", "4", "--unlabeled"], capsys)
        assert code == EXIT_OK
        assert "total=4" in out

    def test_unlabeled_counts(self):
        # 1, 1, 2, 4, 12 isomorphism classes for n = 1..5
        assert [len(unlabeled_representatives(n)) for n in range(1, 6)] == [1, 1, 2, 4, 12][:5]

    def test_gen_subcommand_sweep(self, capsys):
        cases = [
            (["gen", "n1", "--lo", "1", "--hi", "5"], 5),
            (["gen", "2n0", "--count", "4"], 8),
            (["gen", "2n0", "--count", "4", "--infinity"], 9),
            (["gen", "2n1", "--lo", "1", "--hi", "3"], 6),
            (["gen", "cyclic", "--modulus", "7", "--game", "1,2,3"], 7),
            (["gen", "triadic", "--depth", "2"], 9),
            (["gen", "pjk", "--j", "1", "--k", "1", "--depth", "3"], 16),
        ]
        for argv, n in cases:
            code, out = self.run(argv, capsys)
            assert code == EXIT_OK, argv
            assert parse_trn(out).n == n

    def test_gen_lex(self, tmp_path, capsys):
        b = tmp_path / "b.trn"
        f = tmp_path / "f.trn"
        b.write_text(emit_trn(three_cycle()))
        f.write_text(emit_trn(three_cycle()))
        code, out = self.run(["gen", "lex", "--base", str(b), "--fiber", str(f)], capsys)
        assert code == EXIT_OK and parse_trn(out).n == 9

    def test_export_dot(self, tmp_path, capsys):
        p = tmp_path / "c3.trn"
        p.write_text(emit_trn(three_cycle()))
        code, out = self.run(["export", str(p), "--format", "dot"], capsys)
        assert code == EXIT_OK
        assert "v0 -> v1;" in out and "v1 -> v2;" in out and "v2 -> v0;" in out

    def test_export_dot_labels_sidecar(self, tmp_path, capsys):
        p = tmp_path / "c3.trn"
        p.write_text(emit_trn(three_cycle()))
        labels = tmp_path / "labels.txt"
        labels.write_text("a\nb\nc\n")
        code, out = self.run(
            ["export", str(p), "--format", "dot", "--labels", str(labels)], capsys
        )
        assert code == EXIT_OK
        assert "a -> b;" in out

    def test_export_json(self, tmp_path, capsys):
        p = tmp_path / "c3.trn"
        p.write_text(emit_trn(three_cycle()))
        code, out = self.run(["export", str(p), "--format", "json"], capsys)
        data = json.loads(out)
        assert data["n"] == 3 and [0, 1] in data["arcs"]

    def test_parse_error_reports_usage(self, tmp_path, capsys):
        p = tmp_path / "bad.trn"
        p.write_text("TRN 1\nn=3\nxx\n0\n")
        code = cli.main(["analyze", str(p)])
        assert code == EXIT_USAGE

    def test_usage_error(self, capsys):
        assert cli.main(["gen", "bogus"]) == EXIT_USAGE
