# -*- coding: utf-8 -*-
#
# onlinegraph documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

# If extensions (or modules to document with autodoc) are in another directory,
# add these directories to sys.path here.
sys.path.insert(0, os.path.abspath('../src'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx'
]

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

# General information about the project.
project = u'onlinegraph'
copyright = u'2026, onlinegraph contributors'
author = u'onlinegraph contributors'

# The version info for the project, read from the VERSION file.
with open(os.path.join(os.path.dirname(__file__), '..', 'VERSION')) as f:
    version = f.read().strip()
release = version

language = 'en'

exclude_patterns = ['_build']

pygments_style = 'sphinx'

todo_include_todos = False

autodoc_member_order = 'bysource'

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_theme_path = []

html_static_path = []

htmlhelp_basename = 'onlinegraphdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

latex_documents = [
  (master_doc, 'onlinegraph.tex', u'onlinegraph documentation',
   author, 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'onlinegraph', u'onlinegraph documentation',
     [author], 1)
]

# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
  (master_doc, 'onlinegraph', u'onlinegraph documentation',
   author, 'onlinegraph',
   'Online Steiner and facility location algorithms with predictions.',
   'Miscellaneous'),
]

# Example configuration for intersphinx: refer to the Python standard library.
intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}
