# Sphinx configuration for the Rotelem manual.

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

project = "Rotelem"
copyright = "2026, the Rotelem developers"
author = "the Rotelem developers"
release = "0.1.0"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosectionlabel",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
]

# API.rst documents the modules with autodoc
autodoc_member_order = "bysource"

master_doc = "index"
exclude_patterns = ["_build"]

html_theme = "alabaster"
