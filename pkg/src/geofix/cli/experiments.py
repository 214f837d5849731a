from logging import Logger, getLogger
from pathlib import Path
from typing import Annotated, Any

import typer
from pydantic import BaseModel
from rich.table import Table

from geofix import __version__
from geofix.cli.root import app
from geofix.cli.utilities import load_config, process_key_value_pairs
from geofix.convexity import ConvexStructure, check_axioms
from geofix.fixed_point import (
    approx_fixed_point_gap,
    check_rate,
    check_theta_witness,
    km_iterate,
    make_theta,
    rate_bound,
    residual_monotone,
)
from geofix.maps import resolve_map
from geofix.metric import FiniteSample, hyperbolicity_report, load_distance_matrix
from geofix.modulus import bridge_to_discrete, discrete_uc_check, uc_implication_check
from geofix.schemas.config import AxiomsConfig, HyperbolicityConfig, KMConfig, UCheckConfig
from geofix.schemas.reports import KMReport, Manifest, RateVerdict, UCheckReport
from geofix.settings import settings
from geofix.types import AXIOMS
from geofix.utilities.exception import ConfigurationError
from geofix.utilities.files import write_json, write_manifest, write_trace
from geofix.utilities.sampling import BallSampler, TupleSampler

logger: Logger = getLogger(__name__)

WITNESS_CHECK_RANGE = 1024

ConfigOption = Annotated[
    Path | None,
    typer.Option(
        "--config",
        "-c",
        help="JSON experiment config",
        show_default=False,
        dir_okay=False,
    ),
]
SeedOption = Annotated[
    int | None,
    typer.Option("--seed", help="Seed of every random stream", show_default=False),
]
OutOption = Annotated[
    Path,
    typer.Option("--out", "-o", help="Directory receiving the report and manifest", file_okay=False),
]
TolOption = Annotated[
    float | None,
    typer.Option("--tol", help="Comparison tolerance", show_default=False),
]
SamplesOption = Annotated[
    int | None,
    typer.Option("--samples", "-n", help="Number of sampled tuples or points", show_default=False),
]
SetOption = Annotated[
    list[str] | None,
    typer.Option(
        "--set",
        "-s",
        help="Config overrides in <KEY=VALUE> format, dotted keys for nested fields "
        "(can be used multiple times)",
        show_default=False,
    ),
]
QuietOption = Annotated[bool, typer.Option("--quiet", "-q", help="Suppress output")]


def _overrides(
    seed: int | None, tol: float | None, samples: int | None, assignments: list[str] | None
) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    if seed is not None:
        overrides["seed"] = seed
    if tol is not None:
        overrides["tol"] = tol
    if samples is not None:
        overrides["samples"] = samples
    overrides.update(process_key_value_pairs(assignments, as_json=True))
    return overrides


def _manifest(out: Path, command: str, config: BaseModel, notes: list[str] | None = None) -> None:
    write_manifest(
        out,
        Manifest(
            command=command,
            version=__version__,
            config=config.model_dump(mode="json"),
            settings=settings.model_dump(mode="json"),
            notes=notes or [],
        ),
    )


@app.command(rich_help_panel="Convexity")
def axioms(
    config: ConfigOption = None,
    seed: SeedOption = None,
    out: OutOption = Path("geofix-results"),
    tol: TolOption = None,
    samples: SamplesOption = None,
    assignments: SetOption = None,
    quiet: QuietOption = False,
) -> None:
    """
    Check the convexity axioms W1-W4 on seeded samples of a space

    Examples:

    $ geofix axioms --set space='{"kind": "euclidean", "dim": 2}' --seed 7
    """
    app.quiet = quiet
    cfg = load_config(AxiomsConfig, config, _overrides(seed, tol, samples, assignments))
    space = cfg.space.build()

    with app.create_progress() as progress:
        progress.add_task(f"Checking axioms on {space.label}...")
        report = check_axioms(
            ConvexStructure(space),
            TupleSampler(space, cfg.seed),
            cfg.samples or settings.axiom_samples,
            tol=cfg.tol,
            threshold=cfg.threshold,
        )

    table = Table(title=f"Axiom residuals on {space.label}")
    table.add_column("Axiom")
    table.add_column("Residual", justify="right")
    for axiom in AXIOMS:
        residual = report.residuals[axiom]
        style = "red" if residual > report.threshold else "green"
        table.add_row(axiom, f"[{style}]{residual:.3e}[/{style}]")
    app.print(table)

    write_json(out / "axioms.json", report)
    _manifest(out, "axioms", cfg)
    if not report.passed:
        app.exit_with_violation(f"An axiom residual exceeds {report.threshold}")
    app.success(f"All axiom residuals are within {report.threshold}")


@app.command(rich_help_panel="Metric")
def hyperbolicity(
    config: ConfigOption = None,
    seed: SeedOption = None,
    out: OutOption = Path("geofix-results"),
    tol: TolOption = None,
    samples: SamplesOption = None,
    assignments: SetOption = None,
    quiet: QuietOption = False,
) -> None:
    """
    Compute the four-point and base-point hyperbolicity constants of a finite sample

    Examples:

    $ geofix hyperbolicity --set matrix=square.json
    """
    app.quiet = quiet
    cfg = load_config(HyperbolicityConfig, config, _overrides(seed, tol, samples, assignments))

    if cfg.matrix is not None:
        sample = load_distance_matrix(cfg.matrix, cfg.tol)
    else:
        assert cfg.space is not None
        space = cfg.space.build()
        if cfg.points is not None:
            points = [space.parse_point(raw) for raw in cfg.points]
        else:
            sampler = TupleSampler(space, cfg.seed)
            points = [sampler.point() for _ in range(cfg.samples or 0)]
        sample = FiniteSample.from_space(space, points, tol=cfg.tol)

    report = hyperbolicity_report(sample)
    app.print(f"delta = {report.delta_exact or report.delta}")
    if report.witness:
        app.print(f"attained at {[report.points[i] for i in report.witness]}")

    write_json(out / "hyperbolicity.json", report)
    _manifest(out, "hyperbolicity", cfg)
    if not report.doubling:
        app.exit_with_violation("Base-point constants differ by more than a factor of two")
    app.success("Base-point doubling holds")


@app.command(rich_help_panel="Fixed points")
def km(
    config: ConfigOption = None,
    seed: SeedOption = None,
    out: OutOption = Path("geofix-results"),
    tol: TolOption = None,
    assignments: SetOption = None,
    quiet: QuietOption = False,
) -> None:
    """
    Run a Krasnoselski-Mann iteration and check it against the rate bound

    Examples:

    $ geofix km --set space='{"kind": "euclidean", "dim": 1}' --set map=negate --set x0=1
    """
    app.quiet = quiet
    cfg = load_config(KMConfig, config, _overrides(seed, tol, None, assignments))
    tolerance = cfg.tol or settings.tol
    space = cfg.space.build()
    cs = ConvexStructure(space)
    T, fixed = resolve_map(cfg.map, space)
    x0 = space.parse_point(cfg.x0) if cfg.x0 is not None else TupleSampler(space, cfg.seed).point()
    b = cfg.b if cfg.b is not None else float(space.distance(x0, fixed)) or 1.0
    modulus = cfg.modulus.build()

    if cfg.theta is not None:
        theta = cfg.theta.build()
        if not check_theta_witness(theta, cfg.schedule, WITNESS_CHECK_RANGE):
            raise ConfigurationError(
                f"θ(n) = {theta.label} is not a witness for the schedule {cfg.schedule.describe()}"
            )
    else:
        theta = make_theta(cfg.schedule)

    phis = {eps: rate_bound(eps, theta, b, modulus) for eps in cfg.epsilons}
    notes: list[str] = []
    steps = max(phis.values()) + settings.km_margin
    if steps > settings.iteration_cap:
        steps = settings.iteration_cap
        notes.append(
            f"iteration capped at {steps}; bounds beyond the cap only checked for monotonicity"
        )
        logger.warning("Capping the run at %d iterations", steps)

    with app.create_progress() as progress:
        progress.add_task(f"Iterating {T.label} for {steps} steps...")
        trace = km_iterate(space, cs, T, x0, cfg.schedule, steps, keep_iterates=False)

    monotone = residual_monotone(trace, tolerance)
    verdicts: list[RateVerdict] = []
    for eps, phi in phis.items():
        if phi <= steps:
            verdicts.append(
                RateVerdict(
                    epsilon=eps,
                    phi=phi,
                    residual_at_phi=float(trace.residuals[phi]),
                    passed=check_rate(trace, phi, eps, tolerance),
                )
            )
        else:
            verdicts.append(RateVerdict(epsilon=eps, phi=phi, capped=True, passed=monotone))

    gap = approx_fixed_point_gap(space, T, x0, b, [*trace.late, fixed])
    if gap > tolerance:
        logger.warning("Hypothesis only certified up to %s", gap)
        notes.append(f"approximate fixed point within b only certified to {gap}")

    report = KMReport(
        space=space.label,
        map=T.label,
        b=b,
        theta=theta.label,
        modulus=modulus.name,
        iterations=steps,
        monotone=monotone,
        fixed_point_gap=gap,
        verdicts=verdicts,
    )

    table = Table(title=f"{T.label} on {space.label}, b = {b}")
    table.add_column("ε", justify="right")
    table.add_column("Φ", justify="right")
    table.add_column("residual at Φ", justify="right")
    table.add_column("Result")
    for verdict in verdicts:
        residual = "capped" if verdict.residual_at_phi is None else f"{verdict.residual_at_phi:.3e}"
        result = "[green]pass[/green]" if verdict.passed else "[red]fail[/red]"
        table.add_row(f"{verdict.epsilon:g}", str(verdict.phi), residual, result)
    app.print(table)

    write_trace(
        out / "trace.csv",
        trace.residuals,
        [(eps, phi) for eps, phi in phis.items() if phi <= steps],
    )
    write_json(out / "km.json", report)
    _manifest(out, "km", cfg, notes)
    if not report.passed:
        app.exit_with_violation("A residual exceeds its rate bound or grows")
    app.success("Residuals are nonincreasing and within every rate bound")


@app.command(rich_help_panel="Convexity")
def ucheck(
    config: ConfigOption = None,
    seed: SeedOption = None,
    out: OutOption = Path("geofix-results"),
    tol: TolOption = None,
    samples: SamplesOption = None,
    assignments: SetOption = None,
    quiet: QuietOption = False,
) -> None:
    """
    Check a modulus of uniform convexity and its dyadic form on a space

    Examples:

    $ geofix ucheck --set space='{"kind": "halfplane"}' --set modulus=cat0 --seed 3
    """
    app.quiet = quiet
    cfg = load_config(UCheckConfig, config, _overrides(seed, tol, samples, assignments))
    space = cfg.space.build()
    cs = ConvexStructure(space)
    modulus = cfg.modulus.build()
    n = cfg.samples or settings.uc_samples
    sampler = BallSampler(space, cfg.seed)

    with app.create_progress() as progress:
        progress.add_task(f"Sampling {n} balls in {space.label}...")
        violations = uc_implication_check(cs, modulus, sampler, n, cfg.tol)
        discrete = discrete_uc_check(cs, bridge_to_discrete(modulus), sampler, n, cfg.tol)

    report = UCheckReport(
        space=space.label,
        modulus=modulus.name,
        samples=n,
        seed=cfg.seed,
        violations=violations,
        discrete_violations=discrete,
    )
    app.print(f"{len(violations)} violations, {len(discrete)} dyadic violations")

    write_json(out / "ucheck.json", report)
    _manifest(out, "ucheck", cfg)
    if not report.passed:
        app.exit_with_violation(f"Modulus {modulus.name} is violated on {space.label}")
    app.success(f"Modulus {modulus.name} holds on every sampled ball")
