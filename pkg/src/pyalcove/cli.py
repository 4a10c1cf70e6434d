'''command line front end: pyalcove <command> --type A2~ ...'''
import argparse
import json
import sys
import warnings

import pandas as pd

from . import AffineSystem
from .ajs import track_matches
from .bm import BMResult
from .exceptions import PyAlcoveException
from .hecke import bott_samelson, bound_components, bound_U
from .scalars import ScalarField
from .weyl import parse_word, word_string

commands = ['describe', 'kl', 'bs', 'graph', 'gkm', 'bm', 'verify', 'scan', 'bound', 'ajs-track']


def build_parser():
    parser = argparse.ArgumentParser(prog='pyalcove', description='exact affine Weyl group, Hecke algebra and moment graph sheaf computations')
    parser.add_argument('command', choices=commands)
    parser.add_argument('--type', default='A1~', help='affine type, like A1~ or A2~')
    parser.add_argument('--x', default='', help='word of the lower element')
    parser.add_argument('--y', default='', help='word of the upper element')
    parser.add_argument('--w', default=None, help='word of the element to work on')
    parser.add_argument('--word', default=None, help='word as a comma list, for bs, bound and ajs-track')
    parser.add_argument('--ideal', default=None, help='word whose Bruhat ideal is the vertex set, or W_circ')
    parser.add_argument('--field', default='Q', help='Q, Fp (with --p) or F5')
    parser.add_argument('--p', type=int, default=None)
    parser.add_argument('--primes', default='3,5,7', help='comma list of primes for scan')
    parser.add_argument('--lmax', type=int, default=3)
    parser.add_argument('--sample', type=int, default=None, help='verify a random sample of this many elements')
    parser.add_argument('--cutoff', type=int, default=None)
    parser.add_argument('--seed', type=int, default=20240517)
    parser.add_argument('--format', choices=['json', 'dot', 'table'], default='json')
    parser.add_argument('--workers', type=int, default=2)
    return parser


def _word(args, *names):
    for name in names:
        value = getattr(args, name)
        if value is not None:
            return value
    return ''


def _emit(data, args, frame=None):
    if args.format == 'table' and frame is not None:
        print(frame.to_string(index=False))
    elif isinstance(data, str):
        print(data if args.format == 'dot' else json.dumps(data))
    else:
        print(json.dumps(data, sort_keys=True))


def run(args):
    ''' dispatch one command, returns the exit status '''
    s = AffineSystem(args.type)
    rd = s.rd
    field = ScalarField.parse(args.field, args.p)

    if args.command == 'describe':
        data = {'type': rd.label, 'rank': rd.rank, 'coxeter_number': rd.coxeter_number,
                'positive_roots': [list(a) for a in rd.positive_roots], 'simple_reflections': rd.rank + 1}
        _emit(data, args, pd.DataFrame({'root': [str(a) for a in rd.positive_roots], 'height': [rd.height(a) for a in rd.positive_roots]}))
        return 0

    if args.command == 'kl':
        h = s.kl(args.x, args.y)
        _emit(str(h), args, pd.DataFrame([{'x': args.x or 'e', 'y': args.y or 'e', 'h': str(h), 'h(1)': h.evaluate(1)}]))
        return 0

    if args.command == 'bs':
        word = parse_word(rd, _word(args, 'word', 'w'))
        F = s.bs(word, field, args.cutoff)
        data = {'hecke': bott_samelson(rd, word).to_json(), 'sheaf': F.to_json()}
        _emit(data, args, pd.DataFrame([{'x': F.graph.vertex_name(x), 'rank': m.rank, 'degrees': list(m.degrees)} for (x, m) in F.stalks.items()]))
        return 0

    if args.command in ('graph', 'gkm'):
        ideal = _word(args, 'ideal', 'w')
        if ideal != 'W_circ':
            ideal = word_string(parse_word(rd, ideal), rd)
        g = s.graph(ideal)
        if args.command == 'graph':
            _emit(g.to_dot() if args.format == 'dot' else g.to_json(), args,
                  pd.DataFrame([{'x': g.vertex_name(x), 'y': g.vertex_name(y), 'label': str(label)} for (x, y, label) in g.edges]))
            return 0
        data = s.gkm(ideal, field if args.field != 'Q' or args.p else None)
        _emit(data, args, pd.DataFrame([data]))
        return 0

    if args.command == 'bm':
        try:
            result = s.bm(_word(args, 'w', 'word'), field, cutoff=args.cutoff)
        except PyAlcoveException as e:
            print(json.dumps({'error': e.message}), file=sys.stderr)
            return 2
        _emit(result.to_json(), args, result.frame())
        return 0 if result.match else 1

    if args.command == 'verify':
        spec = {'types': rd.label, 'lmax': args.lmax, 'fields': [field.name], 'checks': ['conjecture']}
        if args.sample:
            spec['sample'] = args.sample
        verifier = s.campaigns.load(campaigns={'cli': spec}, settings={'seed': args.seed, 'workers': args.workers})
        frame = verifier.verify()
        summary = {w: bool(group['MATCH'].eq(True).all()) for (w, group) in frame.groupby('W', sort=False)}
        _emit({'type': rd.label, 'field': field.name, 'match': summary}, args, frame)
        return 0 if frame.failures().empty else 1

    if args.command == 'scan':
        primes = [int(p) for p in args.primes.split(',') if p.strip()]
        scan = s.scan(_word(args, 'w', 'word'), primes, cutoff=args.cutoff, workers=args.workers)
        data, rows = {}, []
        for (p, result) in scan.items():
            if isinstance(result, BMResult):
                data[str(p)] = {'match': result.match, 'stalks': result.to_json()['stalks']}
                rows.append({'p': p, 'match': result.match, 'note': ''})
            else:
                data[str(p)] = {'match': False, 'error': result.message}
                rows.append({'p': p, 'match': False, 'note': result.message})
        _emit(data, args, pd.DataFrame(rows))
        return 0 if all(r['match'] for r in rows) else 1

    if args.command == 'bound':
        if args.word is not None:
            word = parse_word(rd, args.word)
            r, d, N, l = bound_components(rd, word)
            data = {'word': word_string(word, rd), 'U': bound_U(rd, word), 'r': r, 'd': d, 'N': N, 'l': l}
        else:
            data = {'w': str(s.element(_word(args, 'w'))), 'U': s.bound(_word(args, 'w'))}
        _emit(data, args, pd.DataFrame([data]))
        return 0

    if args.command == 'ajs-track':
        word = parse_word(rd, _word(args, 'word', 'w'))
        track, ranks, equal = track_matches(rd, word, field, args.cutoff)
        data = {'track': s.ajs_track(word, field).to_json(), 'sheaf_match': equal}
        _emit(data, args, pd.DataFrame([{'alcove': str(A), 'track': track.get(A, 0), 'sheaf': ranks.get(A, 0)} for A in sorted(set(track) | set(ranks), key=str)]))
        return 0 if equal else 1

    raise ValueError(f'unknown command {args.command}')


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('default')
            return run(args)
    except (ValueError, TypeError) as e:
        print(f'pyalcove: {e}', file=sys.stderr)
        return 2
    except PyAlcoveException as e:
        print(f'pyalcove: {e.message}', file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
