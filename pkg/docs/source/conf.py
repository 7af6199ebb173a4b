# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html
import os
import sys

# build from a checkout without installing improlms
sys.path.insert(0, os.path.abspath(os.path.join(__file__, "..", "..", "..")))

import improlms  # noqa: E402

# -- Project information -----------------------------------------------------

project = "improlms"
copyright = "2026, improlms developers"
author = "improlms developers"
release = improlms.__version__

# -- General configuration ---------------------------------------------------

source_suffix = {
    ".rst": "restructuredtext",
    ".md": "markdown",
}

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "sphinx_mdinclude",
]

templates_path = ["_templates"]
exclude_patterns = []

pygments_style = "sphinx"

# improlms docstrings are numpy style
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_use_rtype = False

# autodoc options
autodoc_mock_imports = [
    "scipy",
]
autodoc_member_order = "bysource"
autodoc_default_options = {
    "autosummary": True,
}

autosummary_context = {
    "skipmethods": ["__init__"],
}

# -- Options for HTML output -------------------------------------------------
html_theme = "pydata_sphinx_theme"
html_title = f"improlms {release}"
