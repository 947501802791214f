# -*- coding: utf-8 -*-
#
# assouad-sim documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

import sphinx_rtd_theme

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

# General information about the project.
project = u'assouad-sim'
copyright = u'2026, assouad-sim developers'
author = u'assouad-sim developers'

try:
    from assouad_sim import __version__ as release
except ImportError:
    release = u'0.0.0'
version = '.'.join(release.split('.')[:2])

language = 'en'

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = 'sphinx'

todo_include_todos = True


# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

htmlhelp_basename = 'assouad-sim_doc'

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    (master_doc, 'assouad-sim.tex', u'assouad-sim Documentation',
     u'assouad-sim developers', 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'assouad-sim', u'assouad-sim Documentation',
     [author], 1)
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}
