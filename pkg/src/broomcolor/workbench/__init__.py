"""Generators, file formats, the corpus runner and the command line."""

from __future__ import annotations

from broomcolor.workbench.corpus import CorpusReport, run_corpus
from broomcolor.workbench.dimacs import emit_dimacs, parse_dimacs, read_dimacs, write_dimacs
from broomcolor.workbench.generators import FAMILIES, GenSpec, generate

__all__ = [
    "FAMILIES", "CorpusReport", "GenSpec", "emit_dimacs", "generate", "parse_dimacs",
    "read_dimacs", "run_corpus", "write_dimacs",
]
