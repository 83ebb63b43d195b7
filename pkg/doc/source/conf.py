# -*- coding: utf-8 -*-
#
# ctesfactor documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.

import sys
import os

# If extensions (or modules to document with autodoc) are in another
# directory, add these directories to sys.path here.
sys.path.append(os.path.abspath('../../'))

# -- General configuration ----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.intersphinx']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'ctesfactor'
copyright = u'2016, 2017, ctesfactor developers'

import ctesfactor.version as current_version
# The full version, including alpha/beta/rc tags.
release = current_version.__version__
# The short X.Y version.
version = ".".join(release.split(".")[:2])

exclude_patterns = ['_build']

pygments_style = 'sphinx'

# -- Options for HTML output --------------------------------------------------

html_theme = 'default'

html_static_path = ['_static']

htmlhelp_basename = 'ctesfactordoc'

# -- Options for LaTeX output -------------------------------------------------

latex_documents = [
    ('index', 'ctesfactor.tex', u'ctesfactor Documentation',
     u'ctesfactor developers', 'manual'),
]

# -- Options for manual page output -------------------------------------------

man_pages = [
    ('index', 'ctesfactor', u'ctesfactor Documentation',
     [u'ctesfactor developers'], 1)
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None),
                       'numpy': ('https://numpy.org/doc/stable', None)}
