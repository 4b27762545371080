"""
s4census
Command-line entry point: enumerate cubic and quartic fields, compute
triples, conductors and class groups, and verify the census
"""

import functools
import json
import sys
from pathlib import Path

import click
import yaml
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from arith.shapes import candidate_triples, parse_conductor_shape, parse_discriminant_shape
from census.checks import CensusRangeError, check_conductor_corollary
from census.enumerate import (
    build_quartic_record,
    enumerate_cubic_fields,
    enumerate_quartic_fields,
    filter_group,
)
from census.profile import galois_counts, scaling_profile
from census.records import read_jsonl, write_counts_csv, write_jsonl
from census.verify import census_verify, parse_checks
from classgrp.compute import cache_from_config, cubic_class_group, quadratic_class_group
from orders.fields import CubicField, QuarticField
from poly.intpoly import UnsupportedDegreeError, parse_polynomial
from s4param.bounds import conductor_count_bound, discriminant_count_bound
from s4param.triple import compute_triple, conductor_decomposition, conductor_S_part, quadratic_resolvent_disc, tame_rows
from utils.config import DEFAULT_CONFIG_PATH, load_config, section
from utils.logger import configure_from, setup_logger

logger = setup_logger(__name__)

EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_RANGE = 3


def emit(data: dict) -> None:
    """Write a JSON result to stdout."""
    click.echo(json.dumps(data, indent=2, sort_keys=True, default=str))


def handle_errors(func):
    """Map input errors to exit 2 and range refusals to exit 3."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except CensusRangeError as e:
            click.echo(f"❌ Census range too small: {e}", err=True)
            sys.exit(EXIT_RANGE)
        except (ValueError, yaml.YAMLError, FileNotFoundError) as e:
            click.echo(f"❌ Invalid input: {e}", err=True)
            sys.exit(EXIT_INVALID)
        except Exception as e:
            logger.error(f"{func.__name__} failed: {e}", exc_info=True)
            click.echo(f"❌ Error: {e}", err=True)
            sys.exit(EXIT_FAILED)
    return wrapper


def _config(ctx) -> dict:
    return ctx.obj['config']


def _read_census(path: str, degree: int):
    header, records = read_jsonl(path)
    if header['degree'] != degree:
        raise ValueError(f"{path} holds degree {header['degree']} fields, expected {degree}")
    return header['max_disc'], records


@click.group()
@click.option('--config', 'config_path', default=None, help=f'Configuration file (default {DEFAULT_CONFIG_PATH})')
@click.pass_context
def cli(ctx, config_path):
    """s4census - S4 quartic field census and verification"""
    ctx.ensure_object(dict)
    try:
        ctx.obj['config'] = load_config(config_path)
    except (ValueError, yaml.YAMLError) as e:
        click.echo(f"❌ Configuration Error: {e}", err=True)
        sys.exit(EXIT_INVALID)
    configure_from(ctx.obj['config'])


@cli.command('enumerate')
@click.option('--max-disc', type=int, default=None, help='Discriminant bound X')
@click.option('--degree', type=click.Choice(['3', '4']), default='4', help='Field degree')
@click.option('--group', default='all', help='Galois group to keep (s4, a4, d4, c4, v4, s3, c3 or all)')
@click.option('--jobs', type=int, default=None, help='Worker processes')
@click.option('--class-groups/--no-class-groups', default=None, help='Compute class groups for S4/S3 records')
@click.option('-o', '--output', default=None, help='Census file (JSON lines)')
@click.option('--csv', 'csv_prefix', default=None, help='Write per-disc / per-conductor count tables with this prefix')
@click.pass_context
@handle_errors
def enumerate_fields(ctx, max_disc, degree, group, jobs, class_groups, output, csv_prefix):
    """Enumerate all fields with |disc| <= X"""
    config = _config(ctx)
    if max_disc is None:
        max_disc = section(config, 'census').get('max_disc', 10000)
    degree = int(degree)
    if jobs is not None and jobs < 1:
        raise ValueError(f"--jobs must be positive, got {jobs}")

    click.echo(f"🔎 Enumerating degree {degree} fields with |d| <= {max_disc}...", err=True)
    if degree == 4:
        records = enumerate_quartic_fields(max_disc, config, jobs, class_groups)
    else:
        records = enumerate_cubic_fields(max_disc, config, jobs, class_groups)
    records = filter_group(records, group)

    if output is None:
        out_dir = Path(section(config, 'output').get('directory', 'data/census'))
        output = str(out_dir / f"fields_deg{degree}_{max_disc}.jsonl")
    written = write_jsonl(output, records, degree, max_disc)

    summary = {'output': output, 'records': written, 'galois': galois_counts(records)}
    if csv_prefix and degree == 4:
        profile = scaling_profile(records)
        write_counts_csv(f"{csv_prefix}_disc.csv", profile.per_disc, 'disc')
        write_counts_csv(f"{csv_prefix}_conductor.csv", profile.per_conductor, 'conductor_S')
        summary['csv'] = [f"{csv_prefix}_disc.csv", f"{csv_prefix}_conductor.csv"]
    click.echo(f"✅ {written} fields written to {output}", err=True)
    emit(summary)


@cli.command()
@click.option('--max-disc', type=int, default=None, help='Discriminant bound X')
@click.option('--checks', default=None, help='Comma-separated checks (default: all configured)')
@click.option('--quartic-file', default=None, help='Verify this quartic census instead of enumerating')
@click.option('--cubic-file', default=None, help='Verify this cubic census instead of enumerating')
@click.option('-o', '--output', default=None, help='Report file (JSON)')
@click.pass_context
@handle_errors
def verify(ctx, max_disc, checks, quartic_file, cubic_file, output):
    """Run the verification checks over the census"""
    config = _config(ctx)
    options = section(config, 'verify')
    selected = parse_checks(checks) if checks else parse_checks(','.join(options.get('checks') or []))

    quartic = cubic = None
    reach = []
    if quartic_file:
        quartic_max, quartic = _read_census(quartic_file, 4)
        reach.append(quartic_max)
    if cubic_file:
        cubic_max, cubic = _read_census(cubic_file, 3)
        reach.append(cubic_max)
    if max_disc is None:
        max_disc = min(reach) if reach else section(config, 'census').get('max_disc', 10000)
    elif reach and max_disc > min(reach):
        raise CensusRangeError(f"census files reach |d| <= {min(reach)}, --max-disc is {max_disc}")

    click.echo(f"🔬 Verifying {', '.join(selected)} to X = {max_disc}...", err=True)
    report = census_verify(max_disc, selected, config, quartic, cubic)
    data = report.to_dict()
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        with open(output, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, sort_keys=True, default=str)
    emit(data)

    if not report.passed:
        click.echo(f"❌ Failed checks: {', '.join(report.failures())}", err=True)
        sys.exit(EXIT_FAILED)
    click.echo("✅ All checks passed", err=True)


@cli.command()
@click.option('--poly', 'poly_text', required=True, help='Quartic polynomial, e.g. "x^4-x-1"')
@click.pass_context
@handle_errors
def triple(ctx, poly_text):
    """Triple (a, b, cS) and table rows of an S4 quartic field"""
    K = QuarticField(parse_polynomial(poly_text))
    t = compute_triple(K)
    emit({
        'poly': list(K.poly.coefficients),
        'disc': K.disc,
        'galois': str(K.galois),
        'd_k': quadratic_resolvent_disc(K),
        'd_M': K.resolvent.disc,
        'triple': t.to_dict(),
        'c_23_known': t.c_23_known,
        'tame': [row.to_dict() for row in tame_rows(K)],
    })


@cli.command()
@click.option('--poly', 'poly_text', required=True, help='Quartic polynomial, e.g. "x^4-x-1"')
@click.pass_context
@handle_errors
def conductor(ctx, poly_text):
    """Conductor S-part of an S4 quartic field and its decomposition"""
    K = QuarticField(parse_polynomial(poly_text))
    N = conductor_S_part(K)
    record = build_quartic_record(K.poly, class_groups=False)
    emit({
        'poly': list(record.poly.coefficients),
        'conductor_S': N,
        'shape': parse_conductor_shape(N).to_dict(),
        'decomposition': conductor_decomposition(K).to_dict(),
        'corollary': check_conductor_corollary(record),
    })


@cli.command()
@click.option('--quadratic-disc', type=int, default=None, help='Fundamental discriminant D')
@click.option('--poly', 'poly_text', default=None, help='Cubic polynomial')
@click.pass_context
@handle_errors
def classgroup(ctx, quadratic_disc, poly_text):
    """Certified class group of a quadratic or cubic field"""
    config = _config(ctx)
    if (quadratic_disc is None) == (poly_text is None):
        raise ValueError("give exactly one of --quadratic-disc and --poly")
    cache = cache_from_config(config)
    if quadratic_disc is not None:
        cg = quadratic_class_group(quadratic_disc, config, cache)
    else:
        poly = parse_polynomial(poly_text)
        if poly.degree != 3:
            raise UnsupportedDegreeError(f"--poly must be cubic, got degree {poly.degree}")
        cg = cubic_class_group(CubicField(poly).order, config, cache)
    emit(cg.to_dict())


@cli.command()
@click.option('--disc', type=int, default=None, help='Discriminant d')
@click.option('--conductor', 'conductor_value', type=int, default=None, help='Conductor N')
@click.option('--constant', type=float, default=1.0, help='Implied constant')
@click.pass_context
@handle_errors
def bounds(ctx, disc, conductor_value, constant):
    """Counting bounds for a discriminant or conductor shape"""
    if (disc is None) == (conductor_value is None):
        raise ValueError("give exactly one of --disc and --conductor")
    if disc is not None:
        shape = parse_discriminant_shape(abs(disc))
        emit({
            'shape': shape.to_dict(),
            'candidate_triples': [list(t) for t in candidate_triples(shape)],
            'bound': discriminant_count_bound(shape, constant),
            'constant': constant,
        })
    else:
        shape = parse_conductor_shape(conductor_value)
        emit({
            'shape': shape.to_dict(),
            'omega': shape.omega(),
            'bound': conductor_count_bound(shape, constant),
            'constant': constant,
        })


DEFAULT_CONFIG = {
    'census': {'max_disc': 10000, 'jobs': 1, 'chunk_size': None, 'class_groups': True,
               'isomorphism_check': True, 'progress': False},
    'classgroup': {'euler_prime_bound': 10000, 'certification_ratio': 2 ** 0.5, 'max_rounds': 10,
                   'initial_radius_factor': 1.0, 'regulator_lower_bound': 0.2},
    'verify': {'checks': ['tables', 'shape', 'gerth', 'fibers', 'lemma1', 'lemma2', 'scaling',
                          'conductor', 'duplicates'],
               'gerth_max_disc': 5000, 'scaling_ceiling': 1.0, 'epsilons': [0.1, 0.25]},
    'cache': {'enabled': True, 'directory': 'data/cache', 'ttl_hours': None},
    'output': {'directory': 'data/census'},
    'logging': {'level': 'INFO', 'json': False},
}


@cli.command()
@click.option('--force', is_flag=True, help='Overwrite an existing configuration file')
@click.pass_context
def init(ctx, force):
    """Write a default configuration and create the working directories"""
    target = Path(DEFAULT_CONFIG_PATH)
    if target.exists() and not force:
        click.echo(f"⚠️  {target} exists; use --force to overwrite", err=True)
    else:
        with open(target, 'w') as f:
            yaml.safe_dump(DEFAULT_CONFIG, f, sort_keys=False)
        click.echo(f"✅ Wrote {target}", err=True)
    for directory in (DEFAULT_CONFIG['output']['directory'], DEFAULT_CONFIG['cache']['directory'], 'logs'):
        Path(directory).mkdir(parents=True, exist_ok=True)
    emit({'config': str(target), 'directories': ['data/census', 'data/cache', 'logs']})


if __name__ == '__main__':
    cli()
