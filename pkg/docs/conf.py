# Sphinx configuration for the pyalcove user documentation

import os
import sys

sys.path.insert(0, os.path.abspath('../src'))

project = 'pyalcove'
copyright = '2024 pyalcove developers'
author = 'pyalcove developers'
release = '0.3.1'
version = release

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.napoleon']
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

html_theme = 'alabaster'

autodoc_member_order = 'bysource'
