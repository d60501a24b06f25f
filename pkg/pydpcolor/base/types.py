from typing import Any, Dict


class BaseModel(object):
    """Common base for value objects: read-only after construction, dict export for reports."""

    __slots__ = ()

    def as_dict(self) -> Dict[str, Any]:
        raise NotImplementedError

    def __repr__(self):
        try:
            body = ', '.join(f"{k}={v!r}" for k, v in self.as_dict().items())
        except NotImplementedError:
            body = ''
        return f"{type(self).__name__}({body})"
