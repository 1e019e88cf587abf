from typing import BinaryIO

from .game import GameState

class IStatePredicate(object):
    def evaluate(self, state: GameState) -> bool:
        pass

class IQuery(object):
    def direction(self) -> str:
        pass
    def is_probability(self) -> bool:
        pass

class IGraphExporter(object):
    def export(self, destination: BinaryIO):
        pass
