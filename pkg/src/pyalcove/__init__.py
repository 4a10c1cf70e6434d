import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime

import pandas as pd

# No mess with my header lines
import pandas.io.formats.excel
pandas.io.formats.excel.ExcelFormatter.header_style = None

from .ajs import ajs_track
from .bm import BMResult, bm_sheaf, prime_scan, verify_conjecture
from .campaign import CampaignVerifier
from .exceptions import CutoffInstability, DivisionFailure, FreeFitFailure, GKMViolation, PyAlcoveException
from .frame_filter import VerifyFrame
from .gsheaf import bott_samelson_sheaf
from .hecke import bound_U_min, kl_cache_size, kl_poly
from .rootsys import build_root_datum
from .scalars import ScalarField
from .structure import build_graph, gkm_check, gkm_prime_set
from .utils import deprecated, readableList
from .weyl import element, elements_upto
from .xls_writers import XlsWriter


class AffineSystem(XlsWriter):
    ''' one affine type with its caches, verification runs and campaigns

    Example::

        s = AffineSystem('A2~')
        s.verify_fancycli(lmax=3, field='Q')
        s.results.failures()
    '''

    # Our states
    STATE_BAD         = -1
    STATE_INIT        =  0
    STATE_RUNNING     =  1
    STATE_READY       =  2

    def __init__(self, type=None):
        self._state = self.STATE_INIT
        self._graphs = {}
        self._jobs = 0
        self._lock = threading.Lock()
        self._last_frame = None
        self._todo = 0
        self._done = 0
        self._starttime = None
        self._stoptime = None
        if not type:
            self._state = self.STATE_BAD
            self.rd = None
        else:
            self.rd = build_root_datum(type)

    @property
    def status(self):
        runtime = "n.a."
        if self._state == self.STATE_BAD:
            status = "Error"
        elif self._state == self.STATE_INIT:
            status = "Initial Object"
        elif self._state == self.STATE_RUNNING:
            status = "Still verifying"
            runtime = (datetime.now() - self._starttime).total_seconds()
        elif self._state == self.STATE_READY:
            status = "Ready"
            runtime = (self._stoptime - self._starttime).total_seconds()
        else:
            status = "Limbo"
        return {'status': status, 'type': self.rd.label if self.rd else None, 'rank': self.rd.rank if self.rd else None,
                'cached-kl': kl_cache_size(), 'cached-graphs': len(self._graphs), 'jobs-run': self._jobs, 'run-time': runtime}

    def _count_jobs(self, n=1):
        with self._lock:
            self._jobs += n

    def _require(self):
        if self._state == self.STATE_BAD:
            raise PyAlcoveException("No affine type given, try AffineSystem('A2~')")

    def field(self, tag='Q', p=None):
        return tag if isinstance(tag, ScalarField) else ScalarField.parse(tag, p)

    def element(self, word):
        self._require()
        return element(self.rd, word)

    def kl(self, x, y):
        ''' h_{x,y} as a LaurentPoly '''
        return kl_poly(self.element(x), self.element(y))

    def graph(self, ideal):
        ''' moment graph on the Bruhat ideal of a word, or W_circ '''
        self._require()
        key = ideal if isinstance(ideal, str) else tuple(ideal)
        if key not in self._graphs:
            self._graphs[key] = build_graph(self.rd, ideal)
        return self._graphs[key]

    def gkm(self, ideal, field=None):
        ''' primes for which the graph fails GKM, and the failing triples over a given field '''
        g = self.graph(ideal)
        found = {'violating_primes': gkm_prime_set(g)}
        if field is not None:
            found['triples'] = len(gkm_check(g, self.field(field)))
        return found

    def bm(self, w, field='Q', cutoff=None, verbose=False) -> BMResult:
        self._count_jobs()
        return bm_sheaf(self.element(w), self.field(field), cutoff=cutoff, verbose=verbose)

    def bs(self, word, field='Q', cutoff=None):
        self._require()
        self._count_jobs()
        return bott_samelson_sheaf(self.rd, word, self.field(field), cutoff)

    def scan(self, w, primes, cutoff=None, workers=2):
        self._count_jobs(len(set(primes)))
        return prime_scan(self.element(w), primes, cutoff=cutoff, workers=workers)

    def bound(self, w):
        return bound_U_min(self.element(w))

    def ajs_track(self, word, field='Q'):
        self._require()
        return ajs_track(self.rd, word, self.field(field))

    @property
    def campaigns(self):
        ''' CampaignVerifier bound to this system '''
        return CampaignVerifier(self)

    @property
    def results(self) -> VerifyFrame:
        ''' VerifyFrame of the last verify run '''
        if self._state != self.STATE_READY:
            raise PyAlcoveException("Not done computing yet!")
        return self._last_frame

    def verify(self, lmax=3, field='Q', workers=2, cutoff=None):
        ''' start a background run of the conjecture check on every element up to length lmax '''
        self._require()
        vt = threading.Thread(target=self.verify_t, args=(lmax, self.field(field), workers, cutoff))
        self._state = self.STATE_RUNNING
        self._starttime = datetime.now()
        vt.start()
        return True

    def verify_t(self, lmax, field, workers=2, cutoff=None):
        elements = elements_upto(self.rd, lmax)
        self._todo = len(elements)
        self._done = 0

        def run(w):
            try:
                frame = verify_conjecture(w, field, cutoff=cutoff).frame(campaign=f'lmax {lmax}')
            except PyAlcoveException as e:
                frame = VerifyFrame.from_records([{'TYPE': self.rd.label, 'W': str(w), 'FIELD': field.name,
                                                   'MATCH': False, 'CAMPAIGN': f'lmax {lmax}', 'NOTE': e.message}],
                                                 columns=VerifyFrame._columns)
            with self._lock:
                self._done += 1
                self._jobs += 1
            return frame

        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            frames = list(pool.map(run, elements))
        self._last_frame = VerifyFrame(pd.concat(frames, ignore_index=True)) if frames else VerifyFrame.empty_frame()
        self._stoptime = datetime.now()
        self._state = self.STATE_READY
        return True

    def verify_fancycli(self, lmax=3, field='Q', workers=2, cutoff=None):
        field = self.field(field)
        print(f'{datetime.now().strftime("%y-%m-%d %H:%M:%S")} - verifying {self.rd.label} up to length {lmax} over {field}')
        self.verify(lmax, field, workers, cutoff)
        while self._state < self.STATE_READY:
            progress = math.floor((self._done / self._todo) * 63) if self._todo else 0
            pct = (progress/63) * 100
            done = progress * '▉'
            todo = (63-progress) * ' '
            print(f'{datetime.now().strftime("%y-%m-%d %H:%M:%S")} - progress: {done}{todo} ({pct:.2f}%)'.center(80), end="\r")
            time.sleep(0.5)
        print('')
        print(f'{datetime.now().strftime("%y-%m-%d %H:%M:%S")} - progress: {63*"▉"} ({100:.2f}%)'.center(80))
        frame = self._last_frame
        failed = frame.failures()
        print(f'{datetime.now().strftime("%y-%m-%d %H:%M:%S")} - {frame["W"].nunique()} elements, {frame.shape[0]} vertices checked, {failed.shape[0]} mismatches')
        if not failed.empty:
            print(f'{datetime.now().strftime("%y-%m-%d %H:%M:%S")} - mismatches at w = {readableList(sorted(failed["W"].unique()))}')
        print(f'{datetime.now().strftime("%y-%m-%d %H:%M:%S")} - total run time: {(self._stoptime - self._starttime).total_seconds()} seconds')
        return frame

    def save_results(self, fileName='pyalcove.xlsx'):
        self.verify2xls(self.results, fileName)

    fancycli = deprecated(verify_fancycli, "fancycli")
