"""fquant command-line interface."""

from collections.abc import Callable
from pathlib import Path
from typing import Annotated

import typer
from pydantic import ValidationError
from rich.console import Console

from .. import __version__
from ..codebook.models import ProductCodebook
from ..codebook.product import build_product_codebook
from ..errors import FquantError, QuantDomainError
from ..log import setup_logging
from ..qsde.ensemble import quantized_expectation, quantized_sde_ensemble
from ..qsde.experiment import pathwise_convergence_experiment
from ..qsde.registry import get_functional, get_spec
from ..services.rate_service import RateService
from .output import render_csv, render_json, write_text
from .schemas import ExperimentConfig

EXIT_IO = 4

app = typer.Typer(help="Functional quantization of Brownian motion and quantized SDEs.")
codebook_app = typer.Typer(help="Build and inspect product codebooks.")
rate_app = typer.Typer(help="Convergence-rate tables.")
sde_app = typer.Typer(help="Quantized SDE experiments.")
app.add_typer(codebook_app, name="codebook")
app.add_typer(rate_app, name="rate")
app.add_typer(sde_app, name="sde")

console = Console(stderr=True, markup=False)

SizesOpt = Annotated[str, typer.Option("--N", help="Codebook size or comma-separated sizes")]
DimOpt = Annotated[int, typer.Option("--d", help="Brownian dimension")]
HorizonOpt = Annotated[float, typer.Option("--T", help="Time horizon")]
QOpt = Annotated[float, typer.Option("--q", help="Hölder exponent parameter, 2 < q")]
GridOpt = Annotated[int, typer.Option("--grid", help="Number of grid steps")]
PathsOpt = Annotated[int, typer.Option("--paths", help="Monte Carlo path count")]
SeedOpt = Annotated[int | None, typer.Option("--seed", help="Root random seed")]
OutOpt = Annotated[Path | None, typer.Option("--out", help="Output file (stdout if omitted)")]
FormatOpt = Annotated[str, typer.Option("--format", help="csv or json")]
SpecOpt = Annotated[str, typer.Option("--spec", help="Registered SDE spec name")]


def _run(command: str, action: Callable[[ExperimentConfig], None], **args) -> None:
    """Validate arguments, run the action and map failures to exit codes."""
    try:
        config = ExperimentConfig(command=command, options=tuple(args), **args)
    except ValidationError as err:
        console.print(f"❌ invalid arguments for `{command}`:")
        for problem in err.errors():
            console.print(f"   {'.'.join(str(x) for x in problem['loc'])}: {problem['msg']}")
        raise typer.Exit(2) from None
    try:
        action(config)
    except FquantError as err:
        console.print(f"❌ {err}")
        raise typer.Exit(err.exit_code) from None
    except (ValueError, KeyError) as err:
        console.print(f"❌ malformed input: {err}")
        raise typer.Exit(2) from None
    except OSError as err:
        console.print(f"❌ I/O error on {err.filename or config.out}: {err.strerror or err}")
        raise typer.Exit(EXIT_IO) from None


def _emit_rows(config: ExperimentConfig, rows) -> None:
    render = render_json if config.format == "json" else render_csv
    write_text(render(rows, config.invocation()), config.out)
    if config.out is not None:
        console.print(f"✅ wrote {len(rows)} rows to {config.out}")


@app.callback()
def main(
    log_level: Annotated[str | None, typer.Option("--log-level", help="Logging level")] = None,
) -> None:
    setup_logging(log_level)


@app.command()
def version() -> None:
    """Print the library version."""
    typer.echo(__version__)


@codebook_app.command("build")
def codebook_build(
    sizes: SizesOpt = "10",
    d: DimOpt = 1,
    T: HorizonOpt = 1.0,
    out: OutOpt = None,
) -> None:
    """Build the optimal product codebook and write it as JSON."""

    def action(config: ExperimentConfig) -> None:
        if len(config.Ns) != 1:
            raise QuantDomainError("codebook build takes a single --N")
        cb = build_product_codebook(config.Ns[0], config.d, config.T)
        text = render_json(cb.to_dict(), config.invocation())
        write_text(text, config.out)
        console.print(f"📦 size={cb.size} allocation={cb.allocation.levels}")
        console.print(f"📉 distortion={cb.distortion:.6f}")

    _run("codebook build", action, Ns=sizes, d=d, T=T, out=out)


@codebook_app.command("show")
def codebook_show(path: Annotated[Path, typer.Argument(help="Codebook JSON file")]) -> None:
    """Summarize a stored codebook."""

    def action(config: ExperimentConfig) -> None:
        cb = ProductCodebook.load(path)
        typer.echo(f"T={cb.horizon} d={cb.dim} budget={cb.budget} size={cb.size}")
        typer.echo(f"allocation={cb.allocation.levels}")
        typer.echo(f"distortion={cb.distortion!r}")

    _run("codebook show", action)


@rate_app.command("quadratic")
def rate_quadratic(
    sizes: SizesOpt = "10,100,1000,10000",
    T: HorizonOpt = 1.0,
    out: OutOpt = None,
    fmt: FormatOpt = "csv",
) -> None:
    """Exact quadratic error and normalized rate constant per N."""

    def action(config: ExperimentConfig) -> None:
        _emit_rows(config, RateService().quadratic(config.Ns, config.T))

    _run("rate quadratic", action, Ns=sizes, T=T, out=out, format=fmt)


@rate_app.command("holder")
def rate_holder(
    sizes: SizesOpt = "10,100,1000",
    q: QOpt = 2.5,
    p: Annotated[float | None, typer.Option("--p", help="Also report delta_p")] = None,
    grid: GridOpt = 4096,
    paths: PathsOpt = 200,
    seed: SeedOpt = None,
    d: DimOpt = 1,
    T: HorizonOpt = 1.0,
    out: OutOpt = None,
    fmt: FormatOpt = "csv",
) -> None:
    """Monte Carlo Hölder and rho_q distances between W and its quantization."""

    def action(config: ExperimentConfig) -> None:
        rows = RateService().holder(
            config.Ns,
            config.q,
            config.grid,
            config.paths,
            config.seed,
            T=config.T,
            d=config.d,
            p=config.p,
        )
        _emit_rows(config, rows)

    _run(
        "rate holder",
        action,
        Ns=sizes,
        q=q,
        p=p,
        grid=grid,
        paths=paths,
        seed=seed,
        d=d,
        T=T,
        out=out,
        format=fmt,
    )


@sde_app.command("converge")
def sde_converge(
    spec: SpecOpt = "gbm",
    sizes: SizesOpt = "10,100,1000",
    q: QOpt = 2.5,
    grid: GridOpt = 1024,
    paths: PathsOpt = 200,
    seed: SeedOpt = None,
    d: DimOpt = 1,
    T: HorizonOpt = 1.0,
    out: OutOpt = None,
    fmt: FormatOpt = "csv",
) -> None:
    """Pathwise rho_q convergence of quantized SDE solutions."""

    def action(config: ExperimentConfig) -> None:
        rows = pathwise_convergence_experiment(
            get_spec(config.spec, config.d),
            config.q,
            config.Ns,
            config.paths,
            config.seed,
            n=config.grid,
            T=config.T,
        )
        _emit_rows(config, rows)

    _run(
        "sde converge",
        action,
        spec=spec,
        Ns=sizes,
        q=q,
        grid=grid,
        paths=paths,
        seed=seed,
        d=d,
        T=T,
        out=out,
        format=fmt,
    )


@app.command("cubature")
def cubature(
    spec: SpecOpt = "gbm",
    functional: Annotated[
        str, typer.Option("--functional", help="one, terminal, average or sup")
    ] = "terminal",
    sizes: SizesOpt = "1000",
    grid: GridOpt = 1024,
    d: DimOpt = 1,
    T: HorizonOpt = 1.0,
    out: OutOpt = None,
) -> None:
    """Quantized cubature estimate of E[F(X)]."""

    def action(config: ExperimentConfig) -> None:
        sde = get_spec(config.spec, config.d)
        functional_fn = get_functional(config.functional)
        results = []
        for N in config.Ns:
            cb = build_product_codebook(N, config.d, config.T)
            solution = quantized_sde_ensemble(sde, cb, config.grid)
            results.append(
                {
                    "estimate": quantized_expectation(solution, functional_fn),
                    "N": N,
                    "size": cb.size,
                    "functional": config.functional,
                    "spec": config.spec,
                }
            )
        payload = results[0] if len(results) == 1 else {"results": results}
        write_text(render_json(payload, config.invocation()), config.out)

    _run(
        "cubature",
        action,
        spec=spec,
        functional=functional,
        Ns=sizes,
        grid=grid,
        d=d,
        T=T,
        out=out,
    )


if __name__ == "__main__":
    app()
