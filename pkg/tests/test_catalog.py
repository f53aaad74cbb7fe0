"""The relation catalog: verdicts, method agreement, determinism and mutations."""

from fractions import Fraction

import pytest

from ospcheck import catalog, evalrep, rmatrix
from ospcheck.catalog import HOLDS, VIOLATED

ASSERTED = [r.rid.key for r in catalog.CATALOG if r.asserted]
DIAGNOSTIC = [r.rid.key for r in catalog.CATALOG if not r.asserted]


# catalog shape ----------------------------------------------------------------------

def test_keys_are_unique_and_ordered():
    keys = [r.rid.key for r in catalog.CATALOG]
    assert len(keys) == len(set(keys))
    assert catalog.select("all") == list(catalog.CATALOG)


def test_every_suite_is_populated():
    for suite in catalog.SUITES:
        assert catalog.select(suite)


def test_serre_covers_all_indices():
    keys = {r.rid.key for r in catalog.select("serre")}
    for name in ("plus", "minus"):
        for label in ("1", "2", "empty"):
            assert "prop6/serre-%s/i=%s" % (name, label) in keys


def test_empty_selection_gives_empty_report(family2, config2):
    assert catalog.run_suite([], family2, config2) == []
    assert catalog.run_suite(None, family2, config2) == []


def test_unknown_selection_is_a_config_error():
    with pytest.raises(catalog.ConfigError):
        catalog.select("nonsense")
    with pytest.raises(catalog.ConfigError):
        catalog.select(["rll/++", "nonsense"])


@pytest.mark.parametrize("kwargs", [dict(order=3), dict(t=1), dict(t=0), dict(t=-1),
                                    dict(serre_regions="bogus")])
def test_invalid_config_rejected(kwargs):
    with pytest.raises(catalog.ConfigError):
        catalog.CatalogConfig(**kwargs)


def test_serre_without_regions_rejected(family2):
    cfg = catalog.CatalogConfig(t=Fraction(2))
    with pytest.raises(catalog.ConfigError):
        catalog.run_suite("serre", family2, cfg)


def test_aggregate_ignores_diagnostics(reports2):
    asserted = [reports2[k] for k in ASSERTED]
    assert catalog.aggregate(list(reports2.values())) == all(r.holds for r in asserted)
    assert catalog.aggregate([reports2[k] for k in DIAGNOSTIC])


def test_level_zero_entries_are_labelled(reports2):
    for key in ("2.15/anticommutator", "2.17/anticommutator", "thm2/phi-psi", "rll/+-"):
        assert "level-0 instantiation (q^c = 1)" in reports2[key].notes
    assert any("region assignment" in n for n in reports2["prop6/serre-plus/i=2"].notes)
    assert any("combined current" in n for n in reports2["prop6/serre-plus/i=empty"].notes)


# verdicts at t = 2 (pre-screen) and symbolically (authoritative) ----------------------

@pytest.mark.parametrize("key", ASSERTED)
def test_asserted_relation_holds_at_t2(key, reports2):
    rep = reports2[key]
    assert rep.verdict == HOLDS, rep.witness


@pytest.mark.slow
@pytest.mark.parametrize("key", ASSERTED)
def test_asserted_relation_holds_symbolically(key, reports_symbolic):
    rep = reports_symbolic[key]
    assert rep.verdict == HOLDS, rep.witness


@pytest.mark.slow
def test_method_agreement_everywhere(reports_symbolic, reports2):
    for reports in (reports_symbolic, reports2):
        for rep in reports.values():
            if rep.method == "both":
                assert rep.exact == rep.series, rep.key


@pytest.mark.slow
@pytest.mark.parametrize("t", [Fraction(3), Fraction(5, 2)])
def test_numeric_specialisation_is_sound(t, reports_symbolic, reports2):
    cfg = catalog.CatalogConfig(t=t, serre_regions="monomial")
    fam = evalrep.build_family(t=t)
    numeric = {r.key: r for r in catalog.run_suite("all", fam, cfg)}
    for reports in (numeric, reports2):
        for key, rep in reports_symbolic.items():
            if rep.holds:
                assert reports[key].holds, (t, key, reports[key].witness)


# diagnostics: observed values, no expectation asserted by the catalog ------------------

def _kappas(rep):
    return [n.rsplit("kappa = ", 1)[1] for n in rep.notes if "kappa = " in n]


def test_fitted_constants_at_t2(reports2):
    assert _kappas(reports2["prop3/y-fit"]) == ["2", "-1/2"]
    assert _kappas(reports2["thm3/proportionality-fit"]) == ["45/4", "15/8"]
    # (q - 1/q)^3 at q = 4
    assert _kappas(reports2["2.15/anticommutator-fit"]) == [str(Fraction(15, 4) ** 3)]


def test_cartan_currents_are_negatives(reports2):
    assert reports2["thm2/phi-plus-psi"].verdict == HOLDS


def test_compare_forms_reports_side_by_side(family2, config2):
    cmp = catalog.compare_forms("2.14/xplus-xplus", "prop5/xplus-xplus", family2, config2)
    assert cmp["corrected"]["verdict"] == HOLDS
    assert cmp["original"]["verdict"] in (HOLDS, VIOLATED)
    assert cmp["distinguishable"] == (cmp["original"]["verdict"] != HOLDS)


# determinism -------------------------------------------------------------------------------

def _stripped(reports):
    out = []
    for r in reports:
        d = r.to_dict()
        d.pop("elapsed")
        out.append(d)
    return out


def test_runs_are_deterministic(family2, config2):
    a = catalog.run_suite("drinfeld", family2, config2)
    b = catalog.run_suite("drinfeld", evalrep.build_family(t=Fraction(2)), config2)
    assert _stripped(a) == _stripped(b)


# mutation sensitivity ------------------------------------------------------------------------

@pytest.mark.parametrize("name", rmatrix.ENTRY_NAMES)
def test_mutation_breaks_some_relation(name):
    cfg = catalog.mutation_config(name, t=Fraction(2))
    fam = catalog.build_family_safely(cfg)
    reports = catalog.run_suite("rmatrix", fam, cfg)
    assert any(r.verdict == VIOLATED for r in reports)
    r = cfg.r_override
    assert not (rmatrix.ybe_residual(r).is_zero() and rmatrix.unitarity_residual(r).is_zero())


@pytest.mark.parametrize("mode", ["scale", "zero"])
def test_mutation_is_reported_not_raised(mode):
    cfg = catalog.mutation_config("b", mode, t=Fraction(2))
    fam = catalog.build_family_safely(cfg)
    reports = catalog.run_suite("drinfeld", fam, cfg)
    assert len(reports) == len(catalog.select("drinfeld"))
