"""The identity-check registry: verdicts, parameters, and report formats."""

import pytest

from affkz import suite


def test_registry_ids_unique_and_nonempty():
    ids = suite.registry_ids
    assert len(ids) == len(set(ids)) >= 25


def test_cheap_checks_frozen_verdicts():
    # fast checks with known outcomes; the heavy half is exercised by the
    # acceptance tests through one shared run_all
    assert suite.run_check("thm_capelli").verdict == "match"
    assert suite.run_check("gelfand_central").verdict == "match"
    assert suite.run_check("prop_p6", so_N=5).verdict == "match"
    assert suite.run_check("bracket_indep").verdict == "match"
    c = suite.run_check("eq_jpf", so_N=5)
    assert c.verdict == "paper-internal-inconsistency"
    assert c.structural_ok
    assert "k-2" in c.engine_value
    assert "k+2" in c.paper_value


def test_param_validation():
    with pytest.raises(suite.SuiteError):
        suite.run_check("prop_pffco", so_N=3)
    with pytest.raises(suite.SuiteError):
        suite.run_check("no_such_check")
    with pytest.raises(suite.SuiteError):
        suite.run_check("prop_p1", sl_N=17)


def test_identity_check_fields():
    c = suite.run_check("eq_rq2", so_N=5)
    assert set(["id", "params", "engine_value", "paper_value", "verdict",
                "detail", "structural_ok"]) <= set(vars(c))
    assert c.verdict in ("match", "mismatch", "paper-internal-inconsistency",
                         "structural-only")


def test_records_format_shape():
    report = suite.SuiteReport(so_N=5, sl_N=3, seed=0,
                               checks=[suite.run_check("thm_capelli", so_N=5)])
    text = suite.format_records(report)
    lines = text.strip().splitlines()
    assert lines[0].startswith("suite\t")
    assert lines[-1].startswith("summary\t")
    body = lines[1:-1]
    assert all(ln.startswith("check\t") for ln in body)
    # every body field is tab-delimited key=value; no stray tabs in values
    for ln in body:
        for part in ln.split("\t")[1:]:
            assert "=" in part


def test_text_and_latex_formats_run():
    report = suite.SuiteReport(so_N=5, sl_N=3, seed=0,
                               checks=[suite.run_check("gelfand_central")])
    assert "gelfand_central" in suite.format_text(report)
    assert suite.format_latex(report)


def test_report_ok_property():
    report = suite.SuiteReport(so_N=5, sl_N=3, seed=0,
                               checks=[suite.run_check("thm_capelli", so_N=5)])
    assert report.ok and not report.structural_failures
