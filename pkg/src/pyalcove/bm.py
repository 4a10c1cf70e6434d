'''Braden-MacPherson sheaves on Bruhat intervals and the checks built on them.'''
import warnings
from concurrent.futures import ThreadPoolExecutor

from .exceptions import CutoffInstability, GKMViolation, PyAlcoveException
from .frame_filter import VerifyFrame
from .gsheaf import MGSheaf, PolyMatrix, default_cutoff, edge_key, sections
from .hecke import kl_poly
from .scalars import ScalarField, monomials
from .structure import build_graph, gkm_check, gkm_prime_set, label_form
from .weyl import bruhat_leq, word_string


class BMResult:
    ''' canonical sheaf B_w with its comparison against the Kazhdan-Lusztig values h_{x,w}(1) '''

    def __init__(self, w, field, sheaf, cutoffs):
        self.w = w
        self.field = field
        self.sheaf = sheaf
        self.cutoffs = cutoffs
        self.stalks = dict(sheaf.stalks)
        self.rows = []
        for x in sheaf.graph.vertices:
            h = kl_poly(x, w)
            rank = self.stalks[x].rank
            graded = h.bar().shift(w.length - x.length)
            self.rows.append({'x': x, 'rank': rank, 'kl': h.evaluate(1), 'kl_poly': h,
                              'graded': self.stalks[x].graded_rank() == graded, 'match': rank == h.evaluate(1)})

    @property
    def rd(self):
        return self.w.rd

    @property
    def match(self):
        return all(row['match'] for row in self.rows)

    @property
    def graded_match(self):
        return all(row['graded'] for row in self.rows)

    def ranks(self):
        return {x: m.rank for (x, m) in self.stalks.items()}

    def degrees(self):
        return {x: m.degrees for (x, m) in self.stalks.items()}

    def name(self, x):
        return word_string(x.word(), self.rd) or 'e'

    def to_json(self):
        return {
            'type': self.rd.label,
            'w': self.name(self.w),
            'field': self.field.name,
            'stalks': {self.name(x): list(m.degrees) for (x, m) in self.stalks.items()},
            'kl': {self.name(row['x']): row['kl'] for row in self.rows},
            'match': self.match,
        }

    def frame(self, campaign=''):
        ''' one VerifyFrame row per vertex '''
        return VerifyFrame.from_records([
            {'TYPE': self.rd.label, 'W': self.name(self.w), 'X': self.name(row['x']), 'FIELD': self.field.name,
             'RANK': row['rank'], 'KL': row['kl'], 'KL_POLY': str(row['kl_poly']), 'GRADED': row['graded'],
             'MATCH': row['match'], 'CAMPAIGN': campaign, 'NOTE': ''} for row in self.rows],
            columns=VerifyFrame._columns)

    def __repr__(self):
        ranks = ','.join(str(row['rank']) for row in self.rows)
        return f'<BMResult {self.rd.label} w={self.name(self.w)} over {self.field}: ranks {ranks}, match={self.match}>'


def gkm_gate(g, field):
    ''' raise GKMViolation when labels at a vertex become dependent over the field '''
    triples = gkm_check(g, field)
    if triples:
        p = field.characteristic
        primes = [p] if p else gkm_prime_set(g)
        raise GKMViolation(f'{g.name} is not a GKM graph over {field}, dependent labels at {len(triples)} vertex pairs', primes=primes, triples=triples)


def _vertex_order(g, w, tie_break='word'):
    vertices = [x for x in g.vertices if x != w]
    if tie_break == 'reverse':
        return sorted(vertices, key=lambda x: (-x.length, tuple(-i for i in x.word())))
    return sorted(vertices, key=lambda x: (-x.length, x.word()))


def _project(section, ups, stalks, forms, degree, nvars):
    ''' coordinates of a section on the edge stalks B^y / alpha B^y of the up-edges '''
    vector = []
    for y in ups:
        form = forms[y]
        zero = form.ring.domain.zero
        for (j, e) in enumerate(stalks[y]):
            reduced = section[y][j].rem(form) if section[y][j] else section[y][j]
            vector.extend(reduced.get(m, zero) for m in monomials(nvars, degree - e))
    return vector


def bm_sheaf(w, field=None, cutoff=None, tie_break='word', verbose=False, slack=4):
    ''' Braden-MacPherson sheaf on the Bruhat interval below w

    Vertices are handled by descending length. At x the sections over the vertices above x are projected
    to the edge stalks of the edges leaving x upwards; minimal generators of that image become the stalk at x.

    Args:
        w (AffineWeylElem): top vertex
        field (ScalarField): coefficients, Q when omitted
        cutoff (int): degree cutoff for every section computation, default per vertex set
        tie_break (str): word or reverse, order among vertices of equal length
        verbose (bool): print one line per vertex
        slack (int): generators this close below the cutoff raise CutoffInstability

    Returns:
        BMResult
    '''
    def v_m(*parms):
        if verbose:
            print(*parms)

    field = field or ScalarField()
    rd = w.rd
    g = build_graph(rd, w)
    gkm_gate(g, field)
    nvars = rd.rank + 1
    stalks = {w: (0,)}
    edge_stalks, rho = {}, {}
    cutoffs = {}
    done = [w]
    for x in _vertex_order(g, w, tie_break):
        above = [y for y in done if bruhat_leq(x, y)]
        ups = [y for (y, _) in g.neighbors(x) if y in stalks and bruhat_leq(x, y)]
        F = MGSheaf(g.subgraph(above), field, stalks, edge_stalks, rho, name=f'B_{w}>{x}')
        limit = cutoff if cutoff is not None else default_cutoff(F, above)
        cutoffs[x] = limit
        space = sections(F, above, cutoff=limit)
        forms = {y: label_form(rd, field, g.label(x, y)) for y in ups}
        R = F.R
        generators = []
        for D in sorted(space.bases):
            image = [_project(space.section(D, vector), ups, stalks, forms, D, nvars) for vector in space.bases[D]]
            if not image:
                continue
            ncols = len(image[0])
            lower = []
            if D-2 in space.bases:
                for vector in space.bases[D-2]:
                    section = space.section(D-2, vector)
                    for gen in R.gens:
                        lower.append(_project({y: [p*gen for p in section[y]] for y in ups}, ups, stalks, forms, D, nvars))
            for i in field.complement(lower, image, ncols):
                generators.append((D, space.section(D, space.bases[D][i])))
        late = [D for (D, _) in generators if D > limit - slack]
        if late:
            raise CutoffInstability(f'stalk of B_{w} at {x} gains generators in degrees {late} near cutoff {limit}', cutoff=limit, degrees=late)
        stalks[x] = tuple(D for (D, _) in generators)
        for y in ups:
            key = edge_key(x, y)
            edge_stalks[key] = stalks[y]
            rho[(y, key)] = PolyMatrix.identity(R, stalks[y])
            entries = [[(section[y][j].rem(forms[y]) if section[y][j] else section[y][j]) for (_, section) in generators]
                       for j in range(len(stalks[y]))]
            rho[(x, key)] = PolyMatrix(R, entries, stalks[y], stalks[x])
        done.append(x)
        v_m(f'{x}: stalk degrees {list(stalks[x])}, {len(ups)} up-edges, cutoff {limit}')
    sheaf = MGSheaf(g, field, stalks, edge_stalks, rho, name=f'B_{w}')
    return BMResult(w, field, sheaf, cutoffs)


def verify_conjecture(w, field=None, cutoff=None, verbose=False, slack=4):
    ''' BMResult whose rows compare rk B_w^x with h_{x,w}(1); graded differences only warn '''
    result = bm_sheaf(w, field, cutoff=cutoff, verbose=verbose, slack=slack)
    if result.match and not result.graded_match:
        warnings.warn(f'graded stalks of B_{w} over {result.field} differ from the shifted Kazhdan-Lusztig polynomials', UserWarning)
    return result


def smooth_locus(w, field=None, cutoff=None):
    result = bm_sheaf(w, field, cutoff=cutoff)
    return {x for (x, rank) in result.ranks().items() if rank == 1}


def check_mone(w, field=None, cutoff=None, result=None):
    ''' rk B_w^x = 1 exactly when h_{x,w}(1) = 1 '''
    result = result or bm_sheaf(w, field, cutoff=cutoff)
    return all((row['rank'] == 1) == (row['kl'] == 1) for row in result.rows)


def _image_dimensions(field, R, columns, stalks, ups, forms, degree, nvars):
    ''' dimension in one degree of the image of the generators, and of the part coming from S_+ '''
    image, lower = [], []
    for (d, section) in columns:
        for m in monomials(nvars, degree - d):
            mono = R.from_dict({m: R.domain.one})
            row = _project({y: [p*mono for p in section[y]] for y in ups}, ups, stalks, forms, degree, nvars)
            image.append(row)
            if d < degree:
                lower.append(row)
    ncols = len(image[0]) if image else 0
    return field.rank(image, ncols), field.rank(lower, ncols)


def check_bm_properties(result):
    ''' failed properties of a BMResult, empty when B_w is the canonical sheaf '''
    failures = []
    sheaf = result.sheaf
    g = sheaf.graph
    w = result.w
    field = result.field
    rd = result.rd
    nvars = rd.rank + 1
    if sheaf.stalk(w).degrees != (0,):
        failures.append(f'top stalk is {sheaf.stalk(w)}, not free of rank one in degree 0')
    for (x, y, _) in g.edges:
        low, high = (x, y) if bruhat_leq(x, y) else (y, x)
        if sheaf.edge_stalk(low, high).degrees != sheaf.stalk(high).degrees or \
                sheaf.restriction(high, low) != PolyMatrix.identity(sheaf.R, sheaf.stalk(high).degrees):
            failures.append(f'edge {low}-{high} is not the quotient of the stalk at {high} by its label')
    stalks = {x: m.degrees for (x, m) in sheaf.stalks.items()}
    for x in g.vertices:
        if x == w:
            continue
        ups = [y for (y, _) in g.up_edges(x)]
        forms = {y: sheaf.label_form(x, y) for y in ups}
        above = [y for y in g.vertices if y != x and bruhat_leq(x, y)]
        space = sections(sheaf.restricted(above), above, cutoff=result.cutoffs.get(x))
        columns = []
        for (j, d) in enumerate(stalks[x]):
            columns.append((d, {y: [sheaf.restriction(x, y).entries[i][j] for i in range(len(stalks[y]))] for y in ups}))
        for D in sorted(space.bases):
            expected = [_project(space.section(D, vector), ups, stalks, forms, D, nvars) for vector in space.bases[D]]
            ncols = len(expected[0]) if expected else 0
            total, lower = _image_dimensions(field, sheaf.R, columns, stalks, ups, forms, D, nvars)
            if field.rank(expected, ncols) != total:
                failures.append(f'restriction at {x} does not reach the image of the sections above in degree {D}')
                break
            fresh = sum(1 for d in stalks[x] if d == D)
            if total - lower != fresh:
                failures.append(f'generators at {x} are not minimal in degree {D}')
                break
    return failures


def prime_scan(w, primes, cutoff=None, workers=2):
    ''' BM sheaf of w over F_p for each prime, in a thread pool

    Returns:
        dict prime -> BMResult, or the PyAlcoveException that stopped the run (GKM gate, cutoff), sorted by prime
    '''
    def run(p):
        try:
            return p, bm_sheaf(w, ScalarField(p), cutoff=cutoff)
        except PyAlcoveException as e:
            return p, e

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = dict(pool.map(run, sorted(set(primes))))
    return {p: results[p] for p in sorted(results)}


def rank_jumps(scan, reference):
    ''' per prime the vertices whose stalk rank differs from the reference result, None for failed runs '''
    jumps = {}
    for (p, result) in scan.items():
        if isinstance(result, BMResult):
            jumps[p] = [x for (x, rank) in result.ranks().items() if rank != reference.ranks()[x]]
        else:
            jumps[p] = None
    return jumps
