"""Sphinx configuration file."""

import polyrep

project = "polyrep"
copyright = "2024, polyrep Authors"
author = "polyrep Authors"
release = polyrep.__version__

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.coverage",
    "sphinx.ext.doctest",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
]

# Configure napoleon for numpy docstring
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_use_param = False
napoleon_use_ivar = False
napoleon_use_rtype = False
napoleon_include_init_with_doc = False

templates_path = ["_templates"]

source_suffix = [".rst"]

master_doc = "index"

language = "en"

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

pygments_style = None

html_theme = "pydata_sphinx_theme"
htmlhelp_basename = "polyrepdoc"
html_last_updated_fmt = "%c"

latex_elements = {}

latex_documents = [
    (
        master_doc,
        "polyrep.tex",
        "polyrep Documentation",
        author,
        "manual",
    ),
]

man_pages = [(master_doc, "polyrep", "polyrep Documentation", [author], 1)]

epub_title = project
epub_exclude_files = ["search.html"]
