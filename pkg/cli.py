"""
qheot command group.

Batch entry point for the simulator: channel verification, scheme metrics,
trade-off curve data, certification and transcripts. Registered on the Flask
app's cli (``flask --app app qheot ...``) and runnable directly.

Exit status: 0 success, 1 a certified check failed, 2 usage error.
"""

import logging

import click

import config
from quantum.error_messages import describe
from quantum.exceptions import ConfigError, PreconditionError, QheotError, UnknownNameError
from services.ExperimentService import (
    CERTIFY_HEADER, CHANNELS_HEADER, METRICS_HEADER, TRADEOFF_HEADER, ExperimentService,
)
from utils.helpers import dumps_csv, dumps_json, write_output
from utils.monitoring import get_collector
from utils.validators import ExperimentConfig, load_experiment_config

log = logging.getLogger(__name__)


def _configure_logging(verbose):
    level = logging.DEBUG if verbose else getattr(logging, config.LOG_LEVEL, logging.INFO)
    logging.basicConfig(level=level)
    logging.getLogger().setLevel(level)


def _build_config(ctx, **overrides):
    try:
        return ctx.obj.merged(**overrides).validate()
    except ConfigError as e:
        raise click.UsageError(str(e), ctx=ctx)


def _fail(ctx, exc):
    """usage errors exit 2, anything else from the simulator exits 1"""
    if isinstance(exc, (UnknownNameError, ConfigError, PreconditionError)):
        raise click.UsageError(str(exc), ctx=ctx)
    info = describe(exc)
    click.echo(f"Error: {info.summary}: {exc}", err=True)
    click.echo(info.hint, err=True)
    ctx.exit(1)


def _emit(cfg: ExperimentConfig, text):
    path = write_output(text, cfg.out)
    if path is None:
        click.echo(text, nl=False)
    else:
        click.echo(f"Wrote {path}", err=True)


def _render(cfg, payload, header=None, rows=None):
    if cfg.format == 'csv':
        return dumps_csv(header, rows)
    return dumps_json(payload)


def _log_timings():
    for stats in get_collector().get_all_stats():
        log.debug(f"{stats['operation']}: {stats['runs']} runs, {stats['total']:.3f}s")


def output_options(func):
    func = click.option('--out', default=None, help='Output path; relative names go under QHEOT_OUTPUT_DIR.')(func)
    func = click.option('--format', 'fmt', type=click.Choice(['json', 'csv']), default=None)(func)
    return func


@click.group(name='qheot')
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='YAML file with experiment settings.')
@click.option('--verbose', is_flag=True, help='Debug logging.')
@click.pass_context
def cli(ctx, config_path, verbose):
    """QHE and oblivious transfer certification toolkit."""
    _configure_logging(verbose)
    if config_path:
        try:
            ctx.obj = load_experiment_config(config_path)
        except ConfigError as e:
            raise click.UsageError(str(e), ctx=ctx)
    else:
        ctx.obj = ExperimentConfig()


@cli.command('verify-channels')
@click.option('--inject-fault', is_flag=True, help='Swap the circuit input bits to exercise the failure path.')
@output_options
@click.pass_context
def verify_channels(ctx, inject_fault, fmt, out):
    """Check the compact SOT channels against their Clifford averages."""
    cfg = _build_config(ctx, command='verify-channels', format=fmt, out=out)
    report = ExperimentService.verify_channels(inject_fault)
    _emit(cfg, _render(cfg, report, CHANNELS_HEADER, report['channels']))
    _log_timings()
    if not report['holds']:
        click.echo(f"max_choi_dev {report['max_choi_dev']:.3e} > {config.CHOI_TOL:.0e}", err=True)
        ctx.exit(1)


@cli.command('scheme-metrics')
@click.option('--scheme', default=None, help='Scheme name; every scheme when omitted.')
@click.option('--seed', type=int, default=None)
@output_options
@click.pass_context
def scheme_metrics(ctx, scheme, seed, fmt, out):
    """Certified eps, eps_d and eps_c bounds per scheme."""
    cfg = _build_config(ctx, command='scheme-metrics', scheme=scheme, seed=seed, format=fmt, out=out)
    try:
        report = ExperimentService.scheme_metrics([cfg.scheme] if cfg.scheme else None, cfg.seed)
    except QheotError as e:
        _fail(ctx, e)
        return
    _emit(cfg, _render(cfg, report, METRICS_HEADER, report['schemes']))
    _log_timings()
    if not report['holds']:
        ctx.exit(1)


@cli.command('tradeoff-curve')
@click.option('--points', type=int, default=None, help='Boundary samples (default 101).')
@output_options
@click.pass_context
def tradeoff_curve(ctx, points, fmt, out):
    """Boundary eps_d + eps_c = 1/2 and the achieved scheme points."""
    cfg = _build_config(ctx, command='tradeoff-curve', points=points, format=fmt, out=out)
    report = ExperimentService.tradeoff_curve(cfg.points)
    _emit(cfg, _render(cfg, report, TRADEOFF_HEADER, ExperimentService.tradeoff_rows(report)))


@cli.command('certify')
@click.option('--instance', default=None, help='Protocol-1 instance; every shipped instance when omitted.')
@click.option('--theta', 'thetas', type=float, multiple=True, help='Rotation angle in radians, repeatable.')
@click.option('--scheme', default=None, help='Scheme name; every scheme when omitted.')
@click.option('--trials', type=int, default=None, help='Add a Monte-Carlo run of the QHE-based OT.')
@click.option('--seed', type=int, default=None)
@output_options
@click.pass_context
def certify(ctx, instance, thetas, scheme, trials, seed, fmt, out):
    """Certify the OT trade-off on instances and the QHE bound on schemes."""
    cfg = _build_config(ctx, command='certify', instance=instance, thetas=list(thetas) or None,
                        scheme=scheme, trials=trials, seed=seed, format=fmt, out=out)
    try:
        report = ExperimentService.certify(
            instance=cfg.instance,
            thetas=cfg.thetas,
            schemes=[cfg.scheme] if cfg.scheme else None,
            seed=cfg.seed,
            trials=cfg.trials,
        )
    except QheotError as e:
        _fail(ctx, e)
        return
    _emit(cfg, _render(cfg, report, CERTIFY_HEADER, ExperimentService.certify_rows(report)))
    _log_timings()
    if not report['holds']:
        click.echo("certification failed", err=True)
        ctx.exit(1)


@cli.command('transcript')
@click.option('--scheme', default=None, help='QHE scheme for the OT-from-QHE run (default correlated-pad).')
@click.option('--instance', default=None, help='Record a Protocol-1 run of this instance instead.')
@click.option('--theta', 'thetas', type=float, multiple=True, help='Rotation angle; the first value is used.')
@click.option('--i', 'index', type=click.IntRange(0, 1), default=0, help="Alice's index.")
@click.option('--x0', type=click.IntRange(0, 1), default=0)
@click.option('--x1', type=click.IntRange(0, 1), default=1)
@click.option('--seed', type=int, default=None)
@click.option('--dump-payloads', is_flag=True, help='Embed base64 density matrices.')
@click.option('--out', default=None)
@click.pass_context
def transcript(ctx, scheme, instance, thetas, index, x0, x1, seed, dump_payloads, out):
    """JSON-lines message log of one honest run."""
    cfg = _build_config(ctx, command='transcript', scheme=scheme, instance=instance,
                        thetas=list(thetas) or None, seed=seed, dump_payloads=dump_payloads or None, out=out)
    theta = cfg.thetas[0] if cfg.instance == 'rotation' else None
    try:
        messages = ExperimentService.transcript(
            scheme=cfg.scheme, instance=cfg.instance, theta=theta, i=index, x0=x0, x1=x1,
            seed=cfg.seed, dump_payloads=cfg.dump_payloads,
        )
    except QheotError as e:
        _fail(ctx, e)
        return
    _emit(cfg, messages.to_jsonl())


def main():
    cli(prog_name='qheot')


if __name__ == '__main__':
    main()
