import re
import warnings

def deprecated(func,oldname):
    ''' Wrapper routine to add (deprecated) alias name to new routine (func), supports methods and properties. '''
    def deprecated_func(*arg,**keywords):
        newroutine = func if hasattr(func,"__name__") else func.fget
        warnings.warn(f"{oldname} is deprecated and will be removed, use {newroutine.__name__} instead.", FutureWarning)
        return newroutine(*arg,**keywords)
    deprecated_func.func = func
    return deprecated_func

def listMe(item):
    ''' make list in parameters optional when there is only 1 item, so you can just: for word in listMe(wordOrWords)  '''
    return item if type(item)==list else [item]

def readableList(iter):
    ''' print entries from a dict index into a readable list, e.g., a, b or c '''
    iter = list(iter)
    return iter[0] if len(iter)==1 else ' or '.join([', '.join(iter[0:-1]),iter[-1]])

def simpleListed(item):
    ''' print a string or a list of strings with just commas between values '''
    return item if type(item)==str else ','.join(str(i) for i in item)

def generic2regex(selection):
    ''' Change a generic pattern (* for any string, % for one character) into a regex for pandas str.match.
    Words like 010 and type labels like A2~ contain no regex characters we want to keep, so everything else is escaped. '''
    if selection in ('**','*',''):
        return '.*$'
    return ''.join('.*' if c=='*' else '.' if c=='%' else re.escape(c) for c in selection)+'$'
