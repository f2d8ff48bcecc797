class EventSequence:
    """Monotone insertion counter, breaks ties between events with equal time and priority"""
    __slots__ = ('_ctr', )

    def __init__(self, start: int = 0):
        self._ctr: int = start

    @property
    def value(self) -> int:
        ret = self._ctr
        self._ctr += 1
        return ret

    def __repr__(self) -> str:
        return f'<{self.__class__.__name__} {self._ctr:d}>'
