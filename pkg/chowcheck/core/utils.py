"""
Environment settings, content hashing and the Serializer base of the
report and data classes.
"""
# This module is part of the chowcheck package.
# License: MIT (https://opensource.org/licenses/MIT)


import hashlib
import os

from .logger import chowlogger


VALUES_TRUE = {"true", "on", "1"}
VALUES_FALSE = {"false", "off", "0"}


def boolean_from_string(value):
    """
    "true", "on", "1" and "false", "off", "0" in any case. Other strings
    raise ValueError, non-strings AttributeError.
    """
    lower_value = value.lower()
    if lower_value in VALUES_TRUE:
        return True
    if lower_value in VALUES_FALSE:
        return False
    raise ValueError(f"can't convert '{lower_value}' to a boolean.")


def get_boolean_from_string(value, default=None):
    # default instead of an exception
    try:
        return boolean_from_string(value)
    except (AttributeError, ValueError):
        return default


def get_bool_env(key, default=None):
    """CHOWCHECK_DEBUG and friends; `default` if unset or not a boolean."""
    value = os.getenv(key)
    return get_boolean_from_string(value, default)


def get_int_env(key, default=None, minimum=None):
    """
    Return the value of the environment variable key as an integer.
    Returns `default` if the variable is not set, is not an integer or
    is below `minimum`. Invalid settings are logged.
    """
    value = os.getenv(key)
    if value is None:
        return default
    try:
        number = int(value)
    except ValueError:
        chowlogger.warning(f"ignoring {key}={value!r}: not an integer")
        return default
    if minimum is not None and number < minimum:
        chowlogger.warning(f"ignoring {key}={value!r}: below {minimum}")
        return default
    return number


def content_hash(text):
    """Returns the sha256 hex digest of a text (utf-8 encoded)."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class Serializer:
    """
    Base class for value objects: instances compare equal if they have
    the same instance attributes with equal values, and `serialize()`
    returns these attributes as a dictionary with sorted keys.
    """

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if set(self.__dict__) ^ set(other.__dict__):
            return False
        return all(
            getattr(self, name) == getattr(other, name) for name in self.__dict__
        )

    __hash__ = None

    def serialize(self, exclude=None):
        exclude = set(exclude or ())
        names = set(self.__dict__) - exclude
        return self.get_sorted_dict({name: getattr(self, name) for name in names})

    @staticmethod
    def get_sorted_dict(dictionary):
        """
        Takes a dictionary and returns another one with all keys in
        alphabetical order.
        """
        return {key: dictionary[key] for key in sorted(dictionary)}
