"""
CLI Tests
Sub-command output, formats and exit codes
"""

import json

import pytest

from icbound.main import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


class TestBoundsCommand:
    """Test the bounds sub-command"""

    def test_partition_multicast(self, capsys):
        """Test the exact integral and fractional values on the four-receiver example"""
        report = run_json(capsys, "bounds", "@fig4", "--params", "phi_p,phi_p_f")
        assert report["values"] == {"phi_p": "3", "phi_p_f": "5/2"}
        assert report["m"] == 4
        assert report["field"] == "GF(2)"
        assert "elapsed" not in report
        assert "certificates" not in report

    def test_timing(self, capsys):
        """Test elapsed seconds are only reported on request"""
        report = run_json(capsys, "bounds", "@fig4", "--params", "phi", "--timing")
        assert report["elapsed"] >= 0

    def test_certificates(self, capsys):
        """Test the fractional multicast certificate lists three half-weight groups"""
        report = run_json(capsys, "bounds", "@fig4", "--params", "phi_p_f", "--certificates")
        groups = report["certificates"]["phi_p_f"]["groups"]
        assert [g["weight"] for g in groups] == ["1/2", "1/2", "1/2"]

    def test_output_is_reproducible(self, capsys):
        """Test two runs print byte-identical JSON"""
        _, first, _ = run(capsys, "bounds", "@fig4", "--all")
        _, second, _ = run(capsys, "bounds", "@fig4", "--all")
        assert first == second

    def test_table(self, capsys):
        """Test the table lists parameters in bound order"""
        code, out, _ = run(capsys, "bounds", "@fig4", "--params", "phi,phi_p_f", "--format", "table")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("parameter")
        assert lines[1].split()[:2] == ["phi_p_f", "5/2"]
        assert lines[2].split()[:2] == ["phi", "3"]

    def test_unknown_parameter(self, capsys):
        """Test an unknown parameter is a usage error"""
        code, _, err = run(capsys, "bounds", "@fig4", "--params", "theta")
        assert code == 2
        assert "theta" in err


class TestMinrankCommands:
    """Test minrank, kappa and reduce"""

    def test_fano_distribution(self, capsys):
        """Test the Fano min-rank and its rank histogram"""
        report = run_json(capsys, "minrank", "@fano", "--distribution")
        assert report["value"] == 4
        assert report["distribution"] == {"4": 1, "5": 238, "6": 6575, "7": 9570}

    def test_certificate(self, capsys):
        """Test the certificate is a 4x4 matrix for the four-receiver example"""
        report = run_json(capsys, "minrank", "@fig4")
        assert report["value"] == 2
        assert len(report["certificate"]) == 4

    def test_kappa(self, capsys):
        """Test kappa of the three-receiver coded example"""
        assert run_json(capsys, "kappa", "@remark_comp1")["value"] == 2

    def test_reduce(self, capsys):
        """Test rank n - 1 is refused for the four-receiver example over GF(5)"""
        report = run_json(capsys, "reduce", "@fig4")
        assert report["n"] == 4
        assert report["field"] == "GF(5)"
        assert report["holds"] is False

    def test_budget_exceeded(self, capsys):
        """Test exhausting the node budget is a computational failure"""
        code, out, err = run(capsys, "minrank", "@fano", "--budget", "10")
        assert code == 1
        assert out == ""
        assert "BudgetExceeded" in err

    def test_coded_instance_refused(self, capsys):
        """Test minrank needs an uncoded instance"""
        code, _, _ = run(capsys, "minrank", "@remark_comp")
        assert code == 2


class TestDesignCommands:
    """Test the design sub-commands"""

    def test_fano(self, capsys):
        """Test the Fano plane report with its binary rank"""
        report = run_json(capsys, "design", "@fano_design", "--p", "2")
        assert report["v"] == 7
        assert report["p_rank"] == 4
        assert report["klemm"]["passed"] is True

    def test_generated_plane(self, capsys):
        """Test planes can be named by order"""
        report = run_json(capsys, "design", "plane:3", "--p", "3")
        assert report["v"] == 13
        assert report["projective_plane"] is True
        assert report["p_rank"] == 7

    def test_design_bound(self, capsys):
        """Test the Fano instance needs at most four transmissions"""
        report = run_json(capsys, "design-bound", "@fano", "@fano_design", "--p", "2")
        assert report["bound"] == 4
        assert report["half_bound"] == "4"
        assert report["coincides"] is True

    def test_secrecy(self, capsys):
        """Test all 28 receiver/message pairs are checked"""
        report = run_json(capsys, "secrecy", "@fano", "@fano_design", "--p", "2")
        assert report["pairs_checked"] == 28
        assert report["passed"] is True

    def test_secrecy_wrong_prime(self, capsys):
        """Test a prime not dividing the order is a computational failure"""
        code, _, err = run(capsys, "secrecy", "@fano", "@fano_design", "--p", "3")
        assert code == 1
        assert "Inapplicable" in err

    def test_adversary(self, capsys):
        """Test two points of a line reveal the third"""
        report = run_json(capsys, "adversary", "@fano_design", "--known", "1,2", "--p", "2")
        assert report["recoverable"] == [3]
        assert "safe" not in report

    def test_weights(self, capsys):
        """Test the weight report of the binary Fano code"""
        report = run_json(capsys, "weights", "plane:2", "--p", "2")
        assert report["min_weight"] == 3
        assert report["distribution"] == {"0": 1, "3": 7, "4": 7, "7": 1}


class TestSimulateCommand:
    """Test the simulate sub-command"""

    def test_fractional_multicast(self, capsys):
        """Test five half-size transmissions decode on every trial"""
        report = run_json(capsys, "simulate", "@fig4", "--scheme", "multicast", "--fractional", "--trials", "5")
        assert report["rate"] == "5/2"
        assert report["failures"] == 0
        assert report["trials"] == 5

    def test_seeded(self, capsys):
        """Test the same seed gives the same transcript"""
        argv = ("simulate", "@fig4", "--scheme", "clique", "--trials", "4", "--seed", "7")
        assert run_json(capsys, *argv) == run_json(capsys, *argv)

    def test_no_mds(self, capsys):
        """Test every fixed sub-block choice leaves some receiver short"""
        report = run_json(
            capsys,
            "simulate",
            "@fig4",
            "--scheme",
            "multicast",
            "--no-mds",
            "--groups",
            "1,2,3;1,2,4;3,4",
            "--weights",
            "1/2,1/2,1/2",
        )
        assert len(report["selections"]) == 8
        assert report["always_fails"] is True
        assert report["groups"] == [[1, 2, 3], [1, 2, 4], [3, 4]]
        assert report["weights"] == ["1/2", "1/2", "1/2"]

    def test_design_scheme(self, capsys):
        """Test the design encoder on the Fano instance"""
        report = run_json(
            capsys, "simulate", "@fano", "--scheme", "design", "--design", "@fano_design", "--p", "2"
        )
        assert report["transmissions"] == 4
        assert report["failures"] == 0

    def test_design_scheme_needs_design(self, capsys):
        """Test the design scheme without --design is a computational failure"""
        code, _, _ = run(capsys, "simulate", "@fano", "--scheme", "design")
        assert code == 1


class TestExitCodes:
    """Test usage errors and version output"""

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["frobnicate"],
            ["bounds"],
            ["minrank", "@fig4", "--field", "6"],
            ["bounds", "@fig4", "--format", "xml"],
        ],
    )
    def test_usage(self, capsys, argv):
        """Test malformed command lines exit with 2"""
        assert run(capsys, *argv)[0] == 2

    def test_unknown_fixture(self, capsys):
        """Test an unknown bundled instance is an input error"""
        code, _, err = run(capsys, "bounds", "@nope")
        assert code == 2
        assert "nope" in err

    def test_missing_file(self, capsys, tmp_path):
        """Test a missing instance file is an input error"""
        assert run(capsys, "bounds", str(tmp_path / "absent.json"))[0] == 2

    def test_version(self, capsys):
        """Test --version exits cleanly"""
        assert run(capsys, "--version")[0] == 0

    def test_malformed_weights(self, capsys):
        """Test weights that are not rationals are rejected on the command line"""
        argv = ("simulate", "@fig4", "--scheme", "multicast", "--no-mds", "--groups", "1,2,3;3,4")
        code, out, err = run(capsys, *argv, "--weights", "1/x,1")
        assert code == 2
        assert out == ""
        assert "1/x" in err

    def test_internal_value_error_is_not_usage(self, capsys, monkeypatch):
        """Test a ValueError raised inside a computation is not reported as bad input"""

        def broken(*args, **kwargs):
            raise ValueError("cannot reshape array")

        monkeypatch.setattr("icbound.commands.bounds.compute_bounds", broken)
        with pytest.raises(ValueError, match="reshape"):
            main(["bounds", "@fig4", "--params", "phi"])
