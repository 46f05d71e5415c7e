# config/__init__.py --- Simple configuration wrapper
#
# Defaults come from conf.json in this directory. They can be overridden by
# the JSON file named by the "user_conf" key and then by environment
# variables.

import json
import logging as log
import os

#: Environment variables that override configuration keys
ENV_OVERRIDES = {
    "ROTELEM_MAX_PATH_LENGTH": "max_path_length",
    "ROTELEM_PERIOD_BOUND": "period_bound",
}


class Config(object):
    """the Config class parses the configuration file and provides shortcuts for
    the default values used by the command-line interface.

    Attributes:
       conf     dictionary with all the configuration settings
    """

    def __init__(self, environ=None):
        environ = os.environ if environ is None else environ

        path_dir = os.path.abspath(os.path.dirname(__file__))
        path = os.path.join(path_dir, "conf.json")
        with open(path, "rt") as c:
            self.conf = json.loads(c.read())

        user_path = os.path.expandvars(self.conf["user_conf"])
        user_path = os.path.expanduser(user_path)
        user_path = os.path.abspath(user_path)

        if os.path.isfile(user_path):
            with open(user_path, "rt") as c:
                self.conf.update(json.loads(c.read()))
            log.debug("configuration updated from %s", user_path)

        for variable, key in ENV_OVERRIDES.items():
            value = environ.get(variable)
            if value is None:
                continue

            try:
                self.conf[key] = int(value)
            except ValueError:
                log.warning("ignoring %s=%r, an integer is needed", variable, value)

    def get_max_path_length(self):
        """returns the maximum number of steps of an iterated path"""
        return int(self.conf["max_path_length"])

    def get_max_denominator(self):
        return int(self.conf["max_denominator"])

    def get_period_bound(self):
        """returns the largest period enumerated when checking predictions"""
        return int(self.conf["period_bound"])

    def get_max_len(self):
        return int(self.conf["max_len"])

    def get_max_scale(self):
        return int(self.conf["max_scale"])

    def get_dot_radius(self):
        return int(self.conf["dot_radius"])
