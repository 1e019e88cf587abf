from typing import Optional, Tuple

class VDGError(Exception):
    pass

class ParamsError(VDGError):
    def __init__(self, message: str, key: Optional[str]=None):
        super().__init__(message)
        self.key = key

class ConfigError(VDGError):
    def __init__(self, message: str, key: Optional[str]=None):
        super().__init__(message)
        self.key = key

class StateCapError(VDGError):
    def __init__(self, message: str, count: int, cap: int):
        super().__init__(message)
        self.count = count
        self.cap   = cap

class ModelFormatError(VDGError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line

class ModelInvariantError(VDGError):
    def __init__(self, message: str, state_id: int):
        super().__init__(f"state {state_id}: {message}")
        self.state_id = state_id

class PropertyError(VDGError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at byte {position})")
        self.position = position
class PropertyLexError(PropertyError):
    pass
class PropertySyntaxError(PropertyError):
    pass
class UnsupportedOperatorError(PropertySyntaxError):
    pass
class PropertySemanticError(PropertyError):
    pass

class CheckError(VDGError):
    pass

class MatrixGameError(VDGError):
    def __init__(self, message: str, shape: Tuple[int, int]):
        super().__init__(f"{message} ({shape[0]}x{shape[1]} game)")
        self.shape = shape

class SynthesisError(VDGError):
    pass

# errors a user can fix by changing their input
USAGE_ERRORS = (
    ParamsError,
    ConfigError,
    StateCapError,
    ModelFormatError,
    ModelInvariantError,
    PropertyError,
    CheckError,
    SynthesisError
)
