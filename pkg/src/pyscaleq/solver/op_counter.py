class OperationCounter:
    """Counts the arithmetic updates of a solve"""
    __slots__ = ('_ctr', )

    def __init__(self, start: int = 0):
        assert start >= 0
        self._ctr: int = start

    def add(self, count: int = 1):
        self._ctr += count

    @property
    def value(self) -> int:
        return self._ctr

    def __repr__(self) -> str:
        return f'<{self.__class__.__name__} {self._ctr:d}>'
