#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# opentropy documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.
#
# All configuration values have a default; values that are commented out
# serve to show the default.

import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(__file__, "..", "..")))

import opentropy

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

# General information about the project.
project = opentropy.__name__
copyright = "2024, " + opentropy.__author__

# The short X.Y version.
version = opentropy.__version__
# The full version, including alpha/beta/rc tags.
release = opentropy.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

autodoc_member_order = 'bysource'

# -- Options for HTML output ----------------------------------------------

html_theme = 'default'
html_static_path = []
htmlhelp_basename = 'opentropydoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}
latex_documents = [
  ('index', 'opentropy.tex', 'opentropy Documentation',
   opentropy.__author__, 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    ('index', 'opentropy', 'opentropy Documentation',
     [opentropy.__author__], 1)
]

# Example configuration for intersphinx: refer to the Python standard library.
intersphinx_mapping = {'python': ('https://docs.python.org/3', None),
                       'numpy': ('https://numpy.org/doc/stable', None)}
