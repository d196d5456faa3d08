import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join("..", "..", "src")))

from blowdown import __version__

# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Project information -----------------------------------------------------

project = "blowdown"
copyright = "2026, blowdown developers"
author = "blowdown developers"

version = __version__
release = version

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.autosectionlabel",
    "sphinx_copybutton",
]
templates_path = ["_templates"]
exclude_patterns = []
autosectionlabel_prefix_document = True


# -- Options for HTML output -------------------------------------------------

html_theme = "pydata_sphinx_theme"
html_static_path = ["_static"]


autodoc_type_aliases = {
    "Sequence": "Sequence",
}
