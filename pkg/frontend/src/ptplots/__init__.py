"""Figure generation from sampler CSV/JSON outputs.

No in-process coupling to the sampling engine: every figure is drawn from the
emitted files alone, so the engine remains fully testable without this
package and vice versa.
"""

from .figspec import FIGURE_KINDS, FigureSpec, SchemaError
from .render import render

__all__ = ["FigureSpec", "FIGURE_KINDS", "SchemaError", "render"]

__version__ = "0.1.0"
