from dataclasses import dataclass
from re          import compile as re_compile
from typing      import List

from ..errors import PropertyLexError

@dataclass(frozen=True)
class Token(object):
    kind:     str
    text:     str
    position: int

    def __str__(self) -> str:
        return self.text or self.kind

# longest operators first so "<<" wins over "<" and "=?" over "="
OPERATORS = [
    "<<", ">>", "<=", ">=", "=?",
    "<", ">", "=", ":", ",", "[", "]", "{", "}", "(", ")",
    "+", "-", "*", "!", "&", "|"
]

RE_NUMBER = re_compile(r"[0-9]+(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?")
RE_NAME   = re_compile(r"[A-Za-z_][A-Za-z0-9_]*")
RE_STRING = re_compile(r'"([^"\\]*)"')

NUMBER = "NUMBER"
NAME   = "NAME"
STRING = "STRING"
END    = "END"

def byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf8"))

def tokenise(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        char = text[i]
        if char.isspace():
            i += 1
            continue

        position = byte_offset(text, i)
        number   = RE_NUMBER.match(text, i)
        name     = RE_NAME.match(text, i)
        if number is not None:
            tokens.append(Token(NUMBER, number.group(0), position))
            i = number.end()
        elif name is not None:
            tokens.append(Token(NAME, name.group(0), position))
            i = name.end()
        elif char == '"':
            match = RE_STRING.match(text, i)
            if match is None:
                raise PropertyLexError("unterminated label string",
                    position)
            tokens.append(Token(STRING, match.group(1), position))
            i = match.end()
        else:
            for operator in OPERATORS:
                if text.startswith(operator, i):
                    tokens.append(Token(operator, operator, position))
                    i += len(operator)
                    break
            else:
                raise PropertyLexError(f"unexpected character {char!r}",
                    position)

    tokens.append(Token(END, "", byte_offset(text, len(text))))
    return tokens
