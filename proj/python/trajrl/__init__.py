"""Physics-grounded GRPO trajectory planning engine.

Thin package wrapper around the compiled extension; everything lives in
trajrl._core and is re-exported here.
"""

from trajrl._core import *  # noqa: F401,F403
from trajrl._core import __doc__  # noqa: F401
