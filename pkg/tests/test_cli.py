import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import minimal_transversals
from relblock.antichains import enumerate_antichains
from relblock.cli import main, parse_antichain
from relblock.clutter import Clutter, parse_clutter
from relblock.errors import DomainError, PosetError
from relblock.poset import Poset, boolean_lattice, dump_poset


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.fixture
def clutter_file(tmp_path):
    def make(text):
        path = tmp_path / "family.txt"
        path.write_text(text)
        return str(path)
    return make


class TestFarey:
    def test_sequence(self, capsys):
        code, out, _ = run(capsys, "farey", "--kind", "boolean", "--n", "6", "--m", "3")
        assert code == 0 and out.split() == "0/1 1/4 1/3 2/5 1/2 3/5 2/3 3/4 1/1".split()
        assert run(capsys, "farey", "--kind", "full", "--n", "1")[1].split() == ["0/1", "1/1"]

    def test_queries(self, capsys):
        base = ["farey", "--kind", "boolean", "--n", "6", "--m", "3"]
        assert run(capsys, *base, "--succ", "1/2")[1] == "3/5"
        assert run(capsys, *base, "--pred", "1/2")[1] == "2/5"
        assert run(capsys, *base, "--index", "1/2")[1] == "4"
        assert run(capsys, *base, "--card")[1] == "9"
        assert run(capsys, "farey", "--kind", "left", "--n", "6", "--m", "4", "--card")[1] == "12"

    def test_non_member_exit_two(self, capsys):
        code, _, err = run(capsys, "farey", "--kind", "boolean", "--n", "6", "--m", "3", "--index", "1/6")
        assert code == 2 and "1/6" in err
        code, _, _ = run(capsys, "farey", "--kind", "boolean", "--n", "6", "--m", "3", "--pred", "0/1")
        assert code == 2

    def test_json(self, capsys):
        code, out, _ = run(capsys, "farey", "--kind", "boolean", "--n", "4", "--m", "2", "--json")
        assert json.loads(out) == ["0/1", "1/3", "1/2", "2/3", "1/1"]

    def test_decimal_rejected(self, capsys):
        code, _, err = run(capsys, "farey", "--n", "6", "--m", "3", "--index", "0.5")
        assert code == 1 and "rational" in err


class TestBlocker:
    def test_relative(self, capsys):
        args = ["blocker", "--boolean", "4", "--antichain", "1110,0011", "--omega", "rank"]
        assert run(capsys, *args, "--relative", "1/2")[1] == "{0010}"
        out = run(capsys, *args, "--relative", "1/2", "--layers", "--json")[1]
        assert json.loads(out) == {
            "blocker": ["0010"], "layers": {"1": ["0010"], "3": ["0111", "1011"]},
            "mode": "relative", "r": "1/2"}

    def test_absolute_is_transversal_blocker(self, capsys):
        out = run(capsys, "blocker", "--boolean", "4", "--antichain", "1110,0011", "--absolute", "0", "--json")[1]
        assert json.loads(out)["blocker"] == ["0010", "0101", "1001"]

    def test_trivial(self, capsys):
        assert run(capsys, "blocker", "--boolean", "4", "--antichain", "EMPTY", "--relative", "1/2")[1] == "BOTTOM"
        assert run(capsys, "blocker", "--boolean", "4", "--antichain", "BOTTOM", "--relative", "1/2")[1] == "EMPTY"

    @pytest.mark.parametrize("literal", ["1110,0110", "11x0", "", "111"])
    def test_malformed(self, capsys, literal):
        code, _, err = run(capsys, "blocker", "--boolean", "4", "--antichain", literal, "--relative", "1/2")
        assert code == 1 and err

    def test_poset_file(self, capsys, tmp_path):
        P = Poset(["0", "a", "b", "c", "1"], [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
        path = tmp_path / "n5.json"
        dump_poset(P, path)
        code, out, _ = run(capsys, "blocker", "--poset", str(path), "--antichain", "a", "--omega", "ideal",
                           "--relative", "1/3")
        assert code == 0 and out == "{a}"
        code, _, err = run(capsys, "structure", "--poset", str(path), "--antichain", "a", "--r", "1/2")
        assert code == 1 and "graded" in err


class TestCountDsetStructure:
    def test_count(self, capsys):
        args = ["count", "--boolean", "4", "--antichain", "1110,0011", "--r", "1/2"]
        assert run(capsys, *args, "--k", "3", "--method", "all")[1] == "brute=2 inclexcl=2 mobius=2"
        assert run(capsys, *args, "--k", "3", "--method", "mobius")[1] == "mobius=2"
        # level 4 is outside the D-set and 1111 is not below both generators
        assert run(capsys, *args, "--k", "4")[1] == "brute=0 inclexcl=0 mobius=0"
        code, out, _ = run(capsys, *args, "--k", "1", "--method", "brute")
        assert int(out.split("=")[1]) >= 1

    def test_count_guard_exit_three(self, capsys):
        code, _, _ = run(capsys, "count", "--boolean", "16", "--antichain", "1111111100000000,0000000011111111",
                         "--r", "1/2", "--k", "8", "--method", "mobius")
        assert code == 3

    def test_count_needs_boolean(self, capsys):
        assert run(capsys, "count", "--antichain", "1", "--r", "1/2", "--k", "1")[0] == 1

    def test_dset(self, capsys):
        args = ["dset", "--boolean", "6", "--antichain", "110000,001110", "--r", "1/2"]
        assert run(capsys, *args)[1] == "1 2 3"
        assert json.loads(run(capsys, *args, "--check", "--json")[1]) == {
            "dset": [1, 2, 3], "empty_outside": [4, 5, 6]}

    def test_structure(self, capsys):
        args = ["structure", "--boolean", "4", "--antichain", "1110,0011", "--r", "1/2"]
        for form in ("ideal", "farey", "both"):
            assert run(capsys, *args, "--form", form)[1].split() == ["0010", "0111", "1011"]
        assert run(capsys, *args, "--omega", "atoms")[0] == 1

    def test_json_is_stable(self, capsys):
        args = ["blocker", "--boolean", "5", "--antichain", "11100,00111,10011", "--relative", "1/3",
                "--layers", "--json"]
        first = run(capsys, *args)[1]
        assert all(run(capsys, *args)[1] == first for _ in range(3))
        assert first == json.dumps(json.loads(first), sort_keys=True)


class TestCommittee:
    def test_example(self, capsys, clutter_file):
        path = clutter_file("GROUND 1 2 3 4\n1 2 3\n3 4\n")
        out = json.loads(run(capsys, "committee", path, "--r", "1/2", "--json")[1])
        assert out["committees"] == [["3"]]
        assert out["counts"]["3"] == 2

    def test_zero_threshold_gives_blocker(self, capsys, clutter_file):
        path = clutter_file("GROUND 1 2 3 4\n1 2 3\n3 4\n")
        out = json.loads(run(capsys, "committee", path, "--r", "0", "--json")[1])
        want = sorted(sorted(map(str, S)) for S in minimal_transversals(4, [{1, 2, 3}, {3, 4}]))
        assert sorted(out["committees"]) == want

    def test_empty_family(self, capsys, clutter_file):
        code, _, err = run(capsys, "committee", clutter_file("GROUND a b\n"), "--r", "1/2")
        assert code == 2 and "empty family" in err

    def test_non_sperner_warns(self, capsys, clutter_file):
        path = clutter_file("GROUND a b c\na b\na\n")
        code, out, err = run(capsys, "committee", path, "--r", "0")
        assert code == 0 and "not Sperner" in err
        assert "{a}" in out


class TestClutter:
    def test_parse_and_reduce(self):
        C = parse_clutter("# comment\nGROUND x y z\nx y\n\ny z\n")
        assert C.ground == ("x", "y", "z") and len(C.sets) == 2
        assert C.to_antichain().members == {0b110, 0b011}
        with pytest.warns(UserWarning):
            parse_clutter("GROUND x y\nx\nx y\n")
        with pytest.raises(DomainError):
            parse_clutter("GROUND x y\n")
        with pytest.raises(PosetError):
            parse_clutter("x y\n")
        with pytest.raises(PosetError):
            parse_clutter("GROUND x y\nx w\n")
        with pytest.raises(PosetError):
            Clutter(("x", "y"), frozenset({frozenset("x"), frozenset("xy")}))

    def test_round_trip_exhaustive(self):
        ground = ("p", "q", "r", "s")
        B = boolean_lattice(4)
        for A in enumerate_antichains(B):
            C = Clutter.from_antichain(ground, A)
            assert C.to_antichain(B) == A
            assert Clutter.from_antichain(ground, C.to_antichain()) == C

    @given(st.sets(st.frozensets(st.sampled_from("abcde"), min_size=1), min_size=1, max_size=6))
    def test_round_trip_random(self, family):
        ground = tuple("abcde")
        family = {S for S in family if not any(T < S for T in family)}
        C = Clutter(ground, frozenset(family))
        assert Clutter.from_antichain(ground, C.to_antichain()) == C


def test_antichain_literals():
    B = boolean_lattice(3)
    assert parse_antichain(B, "EMPTY").is_empty
    assert parse_antichain(B, "BOTTOM").is_bottom
    assert parse_antichain(B, " 110 , 001 ").members == {0b110, 0b001}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "relblock", "farey", "--kind", "full", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.split() == ["0/1", "1/2", "1/1"]
    proc = subprocess.run([sys.executable, "-m", "relblock", "nosuch"], capture_output=True, text=True)
    assert proc.returncode == 1
