"""Term-graph intermediate representation toolkit.

Modules:

- `hypergraph`: untyped single-output directed hypergraphs and their
  sequential/parallel composition algebra.
- `codegraph`: typed graphs with multi-input/multi-output edges and
  whole-graph port type checking.
- `laws`: exact isomorphism, term unfolding, and the fuzzed equation suite.
- `worlds`: the binding kernel (scopes, names, weak/strong links).
- `nested` / `sequential`: the two let-expression term-graph syntaxes.
- `source` / `dot` / `cli`: the textual language and command-line tools.
"""
from . import (  # noqa: F401
    codegraph,
    dot,
    errors,
    hypergraph,
    laws,
    nested,
    sequential,
    source,
    worlds,
)

__version__ = "0.1.0"
