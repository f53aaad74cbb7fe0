"""Command-line front end: ``ospcheck verify``.

Exit status is 0 when every relation with an asserted expectation holds,
1 when some asserted relation is violated and 2 for usage or configuration
errors.
"""

import os
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

import click

from . import catalog, evalrep, rmatrix
from .report import ReportDocument

OUT_DIR_ENV = "OSPCHECK_OUT_DIR"
SUITE_CHOICES = ("all",) + catalog.SUITES
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMPARED_FORMS = (
    ("2.14/xminus-xminus", "prop5/xminus-xminus"),
    ("2.14/xplus-xplus", "prop5/xplus-xplus"),
    ("2.18/xminus-xminus", "prop5/xminus-xminus"),
    ("2.18/xplus-xplus", "prop5/xplus-xplus"),
)


@dataclass
class Config:
    suite: str = "all"
    t: str = "symbolic"
    order: int = 8
    serre_regions: str = None
    format: str = "text"
    out: str = None
    corrupt: str = None

    def t_value(self):
        if self.t == "symbolic":
            return None
        try:
            value = Fraction(self.t)
        except (ValueError, ZeroDivisionError):
            raise catalog.ConfigError("--t must be 'symbolic' or a rational number, got %r" % self.t)
        try:
            return rmatrix.check_t_value(value)
        except ValueError as exc:
            raise catalog.ConfigError(str(exc))

    def catalog_config(self):
        """Validate everything up front and build the catalog configuration."""
        if self.suite not in SUITE_CHOICES:
            raise catalog.ConfigError("unknown suite %r" % self.suite)
        if self.format not in ("text", "doc"):
            raise catalog.ConfigError("--format must be 'text' or 'doc'")
        regions = self.serre_regions
        if regions is None and self.suite == "all":
            regions = "monomial"
        if regions is None and self.suite == "serre":
            raise catalog.ConfigError("--serre-regions is required for the serre suite")
        t = self.t_value()
        if self.corrupt is not None:
            if self.corrupt not in rmatrix.ENTRY_NAMES:
                raise catalog.ConfigError("unknown R-matrix entry %r" % self.corrupt)
            return catalog.mutation_config(self.corrupt, t=t, order=self.order,
                                           serre_regions=regions)
        return catalog.CatalogConfig(t=t, order=self.order, serre_regions=regions)


def _rmatrix_section(cfg):
    r = catalog.cfg_r(cfg)
    sym = catalog.cfg_r(cfg, symbolic=True)
    return {
        "checks": {
            "ybe": rmatrix.ybe_residual(r).is_zero(),
            "unitarity": rmatrix.unitarity_residual(r).is_zero(),
            "equal-argument": rmatrix.equal_argument_residual(r).is_zero(),
            "classical-limit": rmatrix.classical_limit_residual(sym).is_zero(),
            "parity": rmatrix.parity_check(r),
        },
    }


def _family(cfg, section):
    """Validate the slice convention and build the currents once."""
    r = catalog.cfg_r(cfg)
    try:
        conv = evalrep.validate_convention(r, cfg.t)
    except evalrep.ConventionError as exc:
        section["convention"] = None
        section["convention_error"] = str(exc)
        if cfg.r_override is None:
            return exc
        # mutation runs keep going with the convention the intact R-matrix selects
        section["convention"] = "aux-first"
        return catalog.build_family_safely(cfg, convention="aux-first")
    section["convention"] = conv.selected
    section["convention_outcomes"] = conv.outcomes
    return catalog.build_family_safely(cfg, convention=conv.selected)


def run(config):
    """Run the configured verification; returns (exit status, ReportDocument)."""
    cfg = config.catalog_config()
    start = time.perf_counter()
    with evalrep.pole_context(cfg.t):
        section = _rmatrix_section(cfg)
    timings = {"rmatrix": round(time.perf_counter() - start, 4)}
    relations = catalog.select(config.suite)
    family = None
    if any(r.suite != "rmatrix" for r in relations):
        start = time.perf_counter()
        family = _family(cfg, section)
        timings["family"] = round(time.perf_counter() - start, 4)
    if isinstance(family, Exception):
        section["family_error"] = "%s: %s" % (type(family).__name__, family)
    reports = catalog.run_suite(config.suite, family, cfg)
    by_key = {r.key: r for r in reports}
    section["comparisons"] = [
        {"original": a, "corrected": b,
         "original_verdict": by_key[a].verdict, "corrected_verdict": by_key[b].verdict}
        for a, b in COMPARED_FORMS if a in by_key and b in by_key
    ]
    echo = {k: v for k, v in asdict(config).items() if k != "out"}
    echo["serre_regions"] = cfg.serre_regions
    echo["level"] = 0
    doc = ReportDocument(config=echo, rmatrix=section, reports=reports, timings=timings)
    status = EXIT_PASS if doc.aggregate and all(section["checks"].values()) else EXIT_FAIL
    return status, doc


def _destination(config):
    if config.out:
        return Path(config.out)
    base = os.environ.get(OUT_DIR_ENV)
    if base:
        name = "report.json" if config.format == "doc" else "report.txt"
        return Path(base) / name
    return None


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact checks of the R-matrix, FRTS and Drinfeld relations for U_q(osp(1|2)^(1))."""


@main.command()
@click.option("--suite", default="all", show_default=True, type=click.Choice(SUITE_CHOICES),
              help="Relations to check.")
@click.option("--t", "t", default="symbolic", show_default=True,
              help="'symbolic' or a rational value for t = q^(1/2), e.g. 2 or 5/2.")
@click.option("--order", default=8, show_default=True, type=click.IntRange(min=4),
              help="Truncation order of the series oracle.")
@click.option("--serre-regions", default=None,
              help="q-Serre expansion regions: 'monomial' or 'fixed:z3>z1>z2'. "
                   "Defaults to 'monomial' for --suite all.")
@click.option("--format", "fmt", default="text", show_default=True,
              type=click.Choice(["text", "doc"]), help="Human-readable text or a JSON document.")
@click.option("--out", default=None, type=click.Path(dir_okay=False),
              help="Output file (default: stdout, or $%s/report.*)." % OUT_DIR_ENV)
@click.option("--corrupt", default=None, metavar="ENTRY",
              help="Scale one R-matrix entry function by 2 (mutation run).")
def verify(suite, t, order, serre_regions, fmt, out, corrupt):
    """Check the selected relations and report verdicts."""
    config = Config(suite=suite, t=t, order=order, serre_regions=serre_regions,
                    format=fmt, out=out, corrupt=corrupt)
    try:
        status, doc = run(config)
    except catalog.ConfigError as exc:
        raise click.UsageError(str(exc))
    text = doc.to_json() if fmt == "doc" else doc.to_text()
    dest = _destination(config)
    if dest is None:
        click.echo(text, nl=False)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)
        click.echo("report written to %s (%s)" % (dest, "PASS" if status == EXIT_PASS else "FAIL"),
                   err=True)
    sys.exit(status)


if __name__ == "__main__":  # pragma: no cover
    main()
