"""improlms/improlms/_base.py.

Base class for improlms objects. Objects are immutable after construction,
so copies with changes go through `replace()`.
"""
from improlms.utils import log


class ImproLmsBase:
    """Base class for improlms. Every subclass gets `_logd`, `_logi` and
    `_logw`, which prepend `<ClassName>` to the message.
    """

    __slots__ = ()

    def __init_subclass__(cls, *args, **kwargs):
        """
        Add logger shortcut.
        """
        super().__init_subclass__(*args, **kwargs)
        prefix = f"<{cls.__qualname__}>"
        cls._logi = log.prepended_log(prefix, log.info)
        cls._logd = log.prepended_log(prefix, log.debug)
        cls._logw = log.prepended_log(prefix, log.warning)

    def _init_kwargs(self):
        """Constructor keyword arguments that rebuild this object.

        Returns
        -------
        kwargs: dict
        """
        raise NotImplementedError(
            f"{type(self).__qualname__} can't be replaced."
        )

    def replace(self, **changes):
        """Copy with some constructor arguments replaced. The copy is
        validated like a new object.

        Parameters
        ----------
        **changes: dict
          constructor keyword arguments.

        Returns
        -------
        replaced: type(self)
        """
        kwargs = self._init_kwargs()
        unknown = set(changes) - set(kwargs)
        if unknown:
            raise TypeError(
                f"{type(self).__qualname__} has no field(s) {sorted(unknown)}."
            )
        kwargs.update(changes)
        return type(self)(**kwargs)
