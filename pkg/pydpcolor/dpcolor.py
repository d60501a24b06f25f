import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from tqdm import tqdm

from pydpcolor import RuleVariant
from pydpcolor.base.errors import BudgetExceeded, DPColorError
from pydpcolor.base.fields import verify_table_fields
from pydpcolor.base.graph_io import GraphReader, transfer_log_text, write_json, write_text
from pydpcolor.core.discharge import apply_rules, audit, classify_face_roles, transfer_rows
from pydpcolor.core.dp import ListAssignment, find_coloring, is_valid_coloring
from pydpcolor.core.graph import (Graph, cycle_spectrum, encode_graph6, forbidden_variant, is_connected, is_planar,
                                  parse_graph_line)
from pydpcolor.core.reducible import certify_reducible, monte_carlo_extend, pattern_report, search_orderings
from pydpcolor.core.solver import (DEFAULT_CHOOSABILITY_VERTICES, chi, chi_dp, chi_list, is_dp_k_colorable,
                                   is_k_choosable)
from pydpcolor.utils import format_charge, format_int_set, get_default_budget, get_default_jobs

logger = logging.getLogger('pydpcolor')

EXIT_OK = 0
EXIT_CERTIFICATE = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3

Report = Tuple[int, Dict]


@dataclass
class RunConfig(object):
    command: str
    inputs: List[str] = field(default_factory=list)
    fmt: str = 'auto'
    variant: str = 'a'
    k: Optional[int] = None
    budget: int = 10 ** 8
    jobs: int = 1
    seed: int = 0
    json_path: Optional[str] = None
    log_path: Optional[str] = None
    cert_path: Optional[str] = None
    matching_path: Optional[str] = None
    patterns: List[str] = field(default_factory=list)
    strict: bool = False
    trials: int = 0
    keep: float = 1.0
    n_max: int = 7
    max_vertices: int = DEFAULT_CHOOSABILITY_VERTICES
    reduce_core: bool = True
    search_order: bool = False
    progress: bool = False
    verbose: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        inputs = getattr(args, 'input', None)
        return cls(
            command=args.command,
            inputs=[inputs] if isinstance(inputs, str) else list(inputs or []),
            fmt=args.format,
            variant=getattr(args, 'variant', 'a'),
            k=getattr(args, 'k', None),
            budget=args.budget if args.budget is not None else get_default_budget(),
            jobs=args.jobs if args.jobs is not None else get_default_jobs(),
            seed=args.seed,
            json_path=args.json,
            log_path=getattr(args, 'log', None),
            cert_path=getattr(args, 'cert', None),
            matching_path=getattr(args, 'matching', None),
            patterns=list(getattr(args, 'pattern', None) or []),
            strict=getattr(args, 'strict', False),
            trials=getattr(args, 'trials', 0),
            keep=getattr(args, 'keep', 1.0),
            n_max=getattr(args, 'n_max', 7),
            max_vertices=getattr(args, 'max_vertices', DEFAULT_CHOOSABILITY_VERTICES),
            reduce_core=not getattr(args, 'no_core', False),
            search_order=getattr(args, 'search_order', False),
            progress=getattr(args, 'progress', False),
            verbose=args.verbose,
        )


def _read_graph(config: RunConfig) -> Graph:
    if not config.inputs:
        raise DPColorError("an input graph is required")
    return GraphReader().get_graph(config.inputs[0], config.fmt)


def _variants_text(satisfied: Iterable[RuleVariant]) -> str:
    values = sorted(v.value for v in satisfied)
    if len(values) == len(RuleVariant):
        return 'all'
    return ', '.join(values) if values else 'none'


def _write_certificate(config: RunConfig, cert) -> str:
    path = config.cert_path or 'certificate.json'
    write_json(path, cert.as_dict())
    return path


def cmd_cycles(config: RunConfig) -> Report:
    g = _read_graph(config)
    spectrum = cycle_spectrum(g)
    satisfied = forbidden_variant(g, spectrum)
    print(f"spectrum {format_int_set(spectrum.present)}; variants: {_variants_text(satisfied)}")
    return EXIT_OK, {'spectrum': sorted(spectrum.present), 'bound': spectrum.search_bound,
                     'variants': sorted(v.value for v in satisfied)}


def cmd_chi(config: RunConfig) -> Report:
    g = _read_graph(config)
    value = chi(g)
    print(f"chi {value}")
    return EXIT_OK, {'chi': value}


def _verdict(config: RunConfig, name: str, result) -> Report:
    if result:
        print(f"{name}-{config.k}: yes")
        return EXIT_OK, {'k': config.k, 'colorable': True}
    path = _write_certificate(config, result)
    print(f"{name}-{config.k}: no; certificate written to {path}")
    return EXIT_CERTIFICATE, {'k': config.k, 'colorable': False, 'certificate': result.as_dict()}


def cmd_chi_list(config: RunConfig) -> Report:
    g = _read_graph(config)
    if config.k is not None:
        result = is_k_choosable(g, config.k, max_vertices=config.max_vertices, budget=config.budget,
                                reduce_core=config.reduce_core)
        return _verdict(config, 'choosable', result)
    value = chi_list(g, max_vertices=config.max_vertices, budget=config.budget, reduce_core=config.reduce_core)
    print(f"chi_list {value}")
    return EXIT_OK, {'chi_list': value}


def cmd_chi_dp(config: RunConfig) -> Report:
    g = _read_graph(config)
    if config.k is not None:
        result = is_dp_k_colorable(g, config.k, budget=config.budget, jobs=config.jobs,
                                   reduce_core=config.reduce_core)
        return _verdict(config, 'DP', result)
    value = chi_dp(g, budget=config.budget, jobs=config.jobs, reduce_core=config.reduce_core)
    print(f"chi_DP {value}")
    return EXIT_OK, {'chi_dp': value}


def cmd_color(config: RunConfig) -> Report:
    reader = GraphReader()
    if config.cert_path and not config.matching_path:
        cert = reader.get_certificate(config.cert_path)
        holds = cert.replay()
        print(f"certificate {'holds: no coloring exists' if holds else 'refuted: a coloring exists'}")
        return (EXIT_OK if holds else EXIT_CERTIFICATE), {'replay': holds}
    g = _read_graph(config)
    if not config.matching_path:
        raise DPColorError("color needs --matching FILE or --cert FILE")
    m, default_k = reader.get_matching(config.matching_path, g)
    k = config.k if config.k is not None else default_k
    if k is None:
        raise DPColorError("list size unknown: pass -k or a 'default identity k=K' line")
    lists = ListAssignment.uniform(g.n, k)
    coloring = find_coloring(g, lists, m)
    if coloring is None:
        print(f"no DP-coloring with k={k}")
        return EXIT_CERTIFICATE, {'k': k, 'coloring': None}
    if not is_valid_coloring(g, lists, m, coloring):
        raise DPColorError("solver returned an invalid coloring")
    colors = coloring.as_list(g.n)
    print('coloring ' + ' '.join(f"{g.labels[v]}={c}" for v, c in enumerate(colors)))
    return EXIT_OK, {'k': k, 'coloring': colors}


def _load_patterns(config: RunConfig):
    if not config.patterns:
        raise DPColorError("at least one --pattern FILE is required")
    reader = GraphReader()
    return [reader.get_pattern(p) for p in config.patterns]


def cmd_find_config(config: RunConfig) -> Report:
    g = _read_graph(config)
    k = config.k if config.k is not None else 3
    report = {}
    for p in _load_patterns(config):
        rows = pattern_report(g, p, k)
        print(f"{p.name}: {len(rows)} occurrences")
        for image, check in rows:
            status = 'reducible' if check else 'open: ' + ', '.join(check.describe())
            print(f"  {' '.join(str(g.labels[v]) for v in image)}  {status}")
        entry = {'occurrences': [{'image': list(image), 'check': check.as_dict()} for image, check in rows]}
        if config.search_order:
            order = search_orderings(g, p, k)
            print(f"  order search: {list(order) if order is not None else 'none certifies every occurrence'}")
            entry['order'] = list(order) if order is not None else None
        report[p.name] = entry
    return EXIT_OK, {'k': k, 'patterns': report}


def cmd_extend(config: RunConfig) -> Report:
    g = _read_graph(config)
    k = config.k if config.k is not None else 3
    code = EXIT_OK
    report = {}
    for p in _load_patterns(config):
        certified = certify_reducible(g, p, k)
        entry = {'certified': certified, 'trials': []}
        print(f"{p.name}: {'certified' if certified else 'not certified'}")
        if not certified:
            code = EXIT_CERTIFICATE
        if config.trials and p.size >= 2:
            for image, check in pattern_report(g, p, k):
                order = [image[i] for i in p.order]
                result = monte_carlo_extend(g, image, order, k, config.trials, seed=config.seed, keep=config.keep)
                print(f"  {' '.join(str(g.labels[v]) for v in order)}: {result.succeeded}/{result.applicable} "
                      f"extended ({result.trials} trials)")
                if result.failures:
                    code = EXIT_CERTIFICATE
                entry['trials'].append({'order': order, **result.as_dict()})
        report[p.name] = entry
    return code, {'k': k, 'patterns': report}


def cmd_discharge(config: RunConfig) -> Report:
    emb = GraphReader().get_embedding(config.inputs[0])
    variant = RuleVariant.parse(config.variant)
    if config.patterns:
        result = audit(emb, variant, _load_patterns(config), strict=config.strict)
        state = result.state
        data = result.as_dict()
    else:
        roles = classify_face_roles(emb)
        state = apply_rules(emb, variant, strict=config.strict, roles=roles)
        data = {'variant': variant.value, 'charges': state.as_dict(), 'roles': roles.as_dict()}
    print(state.summary())
    for phase, tag, total in state.snapshots:
        print(f"  phase {phase} {tag}: total {format_charge(total)}")
    for key, value in state.negatives():
        print(f"  negative {key} {format_charge(value)}")
    for flag in state.flags:
        print(f"  flag: {flag}")
    if config.patterns:
        for finding in result.findings:
            print(f"  finding: {finding}")
    if config.log_path:
        write_text(config.log_path, transfer_log_text(transfer_rows(state)))
    return EXIT_OK, data


def _verify_one(item: Tuple[str, int]) -> Tuple[str, Optional[Dict]]:
    line, budget = item
    g = parse_graph_line(line)
    try:
        result = is_dp_k_colorable(g, 3, budget=budget)
    except BudgetExceeded:
        return 'budget', None
    return ('passed', None) if result else ('failed', result.as_dict())


def _keep_for(g: Graph, n_max: int) -> bool:
    return 0 < g.n <= n_max and is_connected(g) and is_planar(g)


def cmd_verify_theorem2(config: RunConfig) -> Report:
    variants = list(RuleVariant) if config.variant == 'all' else [RuleVariant.parse(config.variant)]
    source = config.inputs[0] if config.inputs else '-'
    graphs = list(GraphReader().get_graph6_stream(source))
    table = {v: dict.fromkeys(verify_table_fields, 0) for v in variants}
    todo: List[str] = []
    wanted: List[List[RuleVariant]] = []
    for g in graphs:
        satisfied = forbidden_variant(g) if _keep_for(g, config.n_max) else set()
        hit = []
        for v in variants:
            table[v]['seen'] += 1
            if v in satisfied:
                hit.append(v)
            else:
                table[v]['filtered'] += 1
        if hit:
            todo.append(encode_graph6(g))
            wanted.append(hit)
    logger.info("verify: %d graphs read, %d to check", len(graphs), len(todo))

    items = [(line, config.budget) for line in todo]
    if config.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(tqdm(pool.map(_verify_one, items), total=len(items), disable=not config.progress,
                                 file=sys.stderr))
    else:
        outcomes = [_verify_one(item) for item in tqdm(items, disable=not config.progress, file=sys.stderr)]

    failures = []
    for line, hit, (status, cert) in zip(todo, wanted, outcomes):
        for v in hit:
            table[v][status] += 1
        if status == 'failed':
            failures.append({'graph6': line, 'variants': [v.value for v in hit], 'certificate': cert})
            print(f"refutation candidate {line}: {cert}")

    header = list(verify_table_fields)
    print('\t'.join(header))
    for v in variants:
        print('\t'.join([v.value] + [str(table[v][c]) for c in header[1:]]))
    code = EXIT_OK
    if failures:
        code = EXIT_CERTIFICATE
    elif any(table[v]['budget'] for v in variants):
        code = EXIT_BUDGET
    return code, {'table': {v.value: {c: table[v][c] for c in header[1:]} for v in variants},
                  'failures': failures}


COMMANDS: Dict[str, Callable[[RunConfig], Report]] = {
    'cycles': cmd_cycles,
    'chi': cmd_chi,
    'chi-list': cmd_chi_list,
    'chi-dp': cmd_chi_dp,
    'color': cmd_color,
    'extend': cmd_extend,
    'find-config': cmd_find_config,
    'discharge': cmd_discharge,
    'verify-theorem2': cmd_verify_theorem2,
}


class _Parser(argparse.ArgumentParser):
    # usage errors share the input-error exit code, 2 means budget exceeded
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help="debug logging on stderr")
    common.add_argument('--seed', type=int, default=0, help="master seed of randomized runs")
    common.add_argument('--format', choices=['auto', 'graph6', 'edges', 'embedding'], default='auto',
                        help="input format, guessed from the extension by default")
    common.add_argument('--json', metavar='PATH', help="write a machine-readable report")
    common.add_argument('--budget', type=int, help="case budget, default $DPCOLOR_BUDGET or 10^8")
    common.add_argument('--jobs', type=int, help="worker processes, default $DPCOLOR_JOBS or 1")

    parser = _Parser(
        prog="dpcolor",
        description="DP-coloring search, reducible configurations and discharging checks for plane graphs",
    )
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name: str, help_text: str, with_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, parents=[common])
        if with_input:
            p.add_argument('input', help="graph file, '-' for stdin")
        return p

    add('cycles', "cycle lengths up to 9 and the forbidden-cycle variants satisfied")
    add('chi', "chromatic number")
    p = add('chi-list', "choice number, or k-choosability with -k")
    p.add_argument('-k', type=int)
    p.add_argument('--max-vertices', type=int, default=DEFAULT_CHOOSABILITY_VERTICES)
    p.add_argument('--cert', metavar='PATH', help="certificate file on failure (default certificate.json)")
    p.add_argument('--no-core', action='store_true', help="skip the k-core reduction")
    p = add('chi-dp', "DP-chromatic number, or DP-k-colorability with -k")
    p.add_argument('-k', type=int)
    p.add_argument('--cert', metavar='PATH', help="certificate file on failure (default certificate.json)")
    p.add_argument('--no-core', action='store_true', help="skip the k-core reduction")
    p = sub.add_parser('color', help="find a DP-coloring for a matching file, or replay a certificate",
                       parents=[common])
    p.add_argument('input', nargs='?', default=None)
    p.add_argument('--matching', metavar='FILE')
    p.add_argument('--cert', metavar='FILE', help="certificate to replay")
    p.add_argument('-k', type=int)
    p = add('extend', "certify reducibility and run randomized extension trials")
    p.add_argument('--pattern', action='append', metavar='FILE')
    p.add_argument('-k', type=int)
    p.add_argument('--trials', type=int, default=0)
    p.add_argument('--keep', type=float, default=1.0, help="probability of keeping each matched pair")
    p = add('find-config', "locate configurations and report the extension check per occurrence")
    p.add_argument('--pattern', action='append', metavar='FILE')
    p.add_argument('-k', type=int)
    p.add_argument('--search-order', action='store_true', help="try every vertex order (at most 8 vertices)")
    p = add('discharge', "run the discharging rules on an embedding")
    p.add_argument('--variant', default='a', choices=[v.value for v in RuleVariant])
    p.add_argument('--strict', action='store_true', help="refuse graphs with a forbidden cycle")
    p.add_argument('--log', metavar='PATH', help="transfer log (TSV)")
    p.add_argument('--pattern', action='append', metavar='FILE', help="also audit these configurations")
    p = add('verify-theorem2', "DP-3-colorability over a graph6 stream", with_input=False)
    p.add_argument('--input', default='-')
    p.add_argument('--variant', default='all', choices=[v.value for v in RuleVariant] + ['all'])
    p.add_argument('--n-max', type=int, default=7)
    p.add_argument('--progress', action='store_true')
    return parser


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig.from_args(args)
    setup_logging(config.verbose)
    logger.debug("run config: %s", asdict(config))
    try:
        code, report = COMMANDS[config.command](config)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        code, report = EXIT_BUDGET, {'budget_exceeded': {'cases': e.cases, 'budget': e.budget, 'unit': e.unit}}
    except (DPColorError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        code, report = EXIT_INPUT, {'error': str(e), 'type': type(e).__name__}
    if config.json_path:
        write_json(config.json_path, {'command': config.command, 'exit': code, 'report': report})
    return code


if __name__ == "__main__":
    sys.exit(main())
