from .game       import *
from .statespace import *
from .parser     import *
from .matrixgame import *
from .engine     import *
from .synthesis  import *
from .config     import *
from .sweep      import *
from .cli        import *
