from dataclasses import dataclass
from .statespace import TransitionModel

@dataclass
class ModelContext(object):
    model: TransitionModel
