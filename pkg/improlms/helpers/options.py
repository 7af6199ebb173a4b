"""improlms/improlms/helpers/options.py

Classes to help organize options of experiment configurations.
"""
from improlms.helpers.raise_if import ConfigError


class Option:
    """
    Minimal Class to hold each option of a configuration section.
    """

    __slots__ = (
        "section",
        "key",
        "description",
        "allowed_types",
        "default",
        "required",
        "validator",
    )

    def __init__(
        self,
        section,
        key,
        description,
        allowed_types,
        default=None,
        required=False,
        validator=None,
    ):
        """
        Parameters
        ----------
        section: str
          Name of the configuration section, e.g. "experiment".
        key: str
        description: str
        allowed_types: tuple
          JSON decoded python types this option accepts.
        default: object
          Value used if the key is absent. Ignored if required.
        required: bool
        validator: callable
          (Optional) Takes the value and returns the converted value. Raises
          ValueError with a message if the value is invalid.
        """
        self.section = section
        self.key = key
        self.description = description
        self.allowed_types = allowed_types
        self.default = default
        self.required = required
        self.validator = validator

    def __repr__(self):
        specific = "\n".join(
            [
                "",
                self.key,
                "=" * len(self.key),
                "section: " + self.section,
                "description:",
                "  " + str(self.description),
                "allowed_types:",
                "  " + str(self.allowed_types),
                "required: " + str(self.required),
                "default: " + str(self.default),
                super().__repr__(),
                "",
            ]
        )
        return specific

    def check(self, value, path):
        """Type check and conversion of a given value.

        Parameters
        ----------
        value: object
        path: str
          Dotted path of the value, used in error messages.

        Returns
        -------
        value: object
          Converted value.
        """
        # bool is an int for isinstance()
        is_bool = isinstance(value, bool)
        if (is_bool and bool not in self.allowed_types) or not isinstance(
            value, self.allowed_types
        ):
            names = ", ".join(t.__name__ for t in self.allowed_types)
            raise ConfigError(
                f"{type(value).__name__} is an invalid type. Expected one "
                f"of ({names}). {self.description}",
                path=path,
            )
        if self.validator is None:
            return value
        try:
            return self.validator(value)
        except ConfigError:
            raise
        except (TypeError, ValueError) as err:
            raise ConfigError(str(err), path=path) from err


def make_valid_options(*options):
    """
    Forms valid options. Should run only once during module loading.

    Parameters
    ----------
    *options: Option

    Returns
    -------
    valid_options: dict()
      section -> key -> Option
    """
    valid_options = dict()
    for opt in options:
        if not isinstance(opt, Option):
            raise TypeError("Please use `Option` to define options.")

        if not valid_options.get(opt.section, False):
            valid_options[opt.section] = dict()

        valid_options[opt.section][opt.key] = opt

    return valid_options


def validate_section(valid_options, section, given, path=""):
    """Checks a decoded JSON object against the options of a section.
    Unknown keys and missing required keys raise ConfigError. Absent
    optional keys get their defaults.

    Parameters
    ----------
    valid_options: dict
      from make_valid_options().
    section: str
    given: dict
    path: str
      Dotted path of the section itself. Empty for the top level.

    Returns
    -------
    validated: dict
    """
    if not isinstance(given, dict):
        raise ConfigError(
            f"Expected a JSON object, got {type(given).__name__}.", path=path
        )
    options = valid_options[section]
    prefix = f"{path}." if path else ""

    unknown = sorted(set(given.keys()) - set(options.keys()))
    if unknown:
        raise ConfigError(
            f"Unknown key. Valid keys are {sorted(options.keys())}.",
            path=prefix + unknown[0],
        )

    validated = dict()
    for key, opt in options.items():
        if key in given:
            validated[key] = opt.check(given[key], prefix + key)
        elif opt.required:
            raise ConfigError(
                f"Missing required key. {opt.description}", path=prefix + key
            )
        else:
            validated[key] = opt.default

    return validated
