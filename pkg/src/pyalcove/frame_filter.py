import re
import pandas as pd
from .utils import generic2regex, readableList


def selection_mask(column, sel, regexPattern=False):
    ''' boolean Series for one selection value on one column

    str values may be GENERIC: ** is any non-empty value, *text* a substring, * and % wildcards otherwise.
    a list selects any of its members, a compiled regex is matched from the start.
    '''
    text = column.astype(str)
    if regexPattern or isinstance(sel, re.Pattern):
        return text.str.match(sel)
    if type(sel)==list:
        if any(type(s)==str and ('*' in s or '%' in s) for s in sel):
            return text.str.match('|'.join(generic2regex(str(s)) for s in sel))
        return column.isin(sel)
    if type(sel)!=str:
        return column==sel
    if sel=='**':
        return text.gt('')
    inner = sel[1:-1]
    if len(sel)>2 and sel.startswith('*') and sel.endswith('*') and '*' not in inner:
        return text.str.contains(inner, regex=False)
    if sel=='*' or not ('*' in sel or '%' in sel):
        return text==sel
    return text.str.match(generic2regex(sel))


class FrameFilter():
    '''filter routines that select or exclude rows from result frames
    '''

    def _frameFilter(df, *selection, kwdValues={}, exclude=False, regexPattern=False, **kwds):
        '''find and skip use this to select from frames without knowing the column names.

        positional values follow the column order of the df, keywords name a column by alias or by its own name:
            result.frame().find(x='01*')
            result.frame().find(w=re.compile('(010|101)'))
        kwdValues maps the alias keywords to column names.

        a row is kept by find when it meets every criterion, and dropped by skip (exclude=True) in that same case.
        '''

        ignored = (None,'**','.*') if regexPattern else (None,'**')
        criteria = [(df.columns[i], sel) for (i, sel) in enumerate(selection) if sel not in ignored]
        for (kwd, sel) in kwds.items():
            if kwd in kwdValues:
                criteria.append((kwdValues[kwd], sel))
            elif kwd in df.columns or kwd.upper() in df.columns:
                criteria.append((kwd if kwd in df.columns else kwd.upper(), sel))
            else:
                raise TypeError(f"unknown selection filter({kwd}={sel}), try {readableList(kwdValues.keys())}, or a column name in uppercase instead")

        mask = pd.Series(True, index=df.index)
        for (column, sel) in criteria:
            mask &= selection_mask(df[column], sel, regexPattern)
        return df.loc[~mask] if exclude else df.loc[mask]


class VerifyFrame(pd.DataFrame,FrameFilter):
    ''' Output of bm_sheaf(...).frame() and of a verify() action, one row per vertex x below w '''

    _columns = ['TYPE','W','X','FIELD','RANK','KL','KL_POLY','GRADED','MATCH','CAMPAIGN','NOTE']

    @property
    def _constructor(self):
        ''' a result of a method is also a VerifyFrame  '''
        return VerifyFrame

    _verifyFilterKwds = {'type':'TYPE', 'w':'W', 'x':'X', 'field':'FIELD', 'rank':'RANK', 'kl':'KL', 'match':'MATCH', 'campaign':'CAMPAIGN'}

    @classmethod
    def empty_frame(cls):
        return cls(columns=cls._columns)

    def find(df, *selection, **kwds):
        '''Search results using GENERIC pattern on the data fields.  selection can be one or more values, corresponding to data columns of the df.

        alternatively specify the field names via an alias keyword (type, w, x, field, rank, kl, match or campaign):

        ``s.campaigns.load().verify().find(field='F*', match=False)``

        specify selection as regex using re.compile:

        ``s.campaigns.load().verify().find(x=re.compile('(01|10)$'))``
        '''
        return df._frameFilter(*selection, **kwds, kwdValues=df._verifyFilterKwds)

    def skip(df, *selection, **kwds):
        '''Exclude results using GENERIC pattern on the data fields.  selection can be one or more values, corresponding to data columns of the df

        alternatively specify the field names via an alias keyword (type, w, x, field, rank, kl, match or campaign):

        ``s.campaigns.load().verify().skip(match=True)``
        '''
        return df._frameFilter(*selection, **kwds, kwdValues=df._verifyFilterKwds, exclude=True)

    def failures(df):
        ''' rows where the stalk rank differs from h_{x,w}(1), or the run did not finish '''
        return df.loc[df['MATCH']!=True]
