import numpy as np

from improlms.helpers import data


def test_make_readonly_array():
    source = np.arange(3)
    readonly = data.make_readonly_array(source, dtype=complex)

    assert readonly.dtype == complex
    assert not readonly.flags.writeable
    source[0] = 9
    assert readonly[0] == 0
    assert data.make_readonly_array(None).size == 0


class _Helpee:
    def __init__(self):
        self._computed = data.ComputedData()
        self.calls = 0

    @data.ComputedData.compute_once
    def value(self):
        self.calls += 1
        return np.ones(2)


def test_compute_once():
    helpee = _Helpee()
    first = helpee.value()

    assert helpee.value() is first
    assert helpee.calls == 1
    assert not first.flags.writeable
    assert _Helpee.value.__name__ == "value"


def test_saved_values_are_per_helpee():
    a, b = _Helpee(), _Helpee()
    a.value()
    b.value()

    assert a.calls == b.calls == 1
