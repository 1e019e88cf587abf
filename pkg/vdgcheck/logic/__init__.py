
from .predicates import *
from .ast        import *
from .parser     import parse_property, Parser
from .labels     import LabelTable
