#!/usr/bin/env python3
#
# (c) 2026 Yoichi Tanibayashi
#
"""
Logger factory shared by all modules

usage:
    from MyLogger import get_logger

    class Foo:
        _log = None

        def __init__(self, debug=False):
            self._dbg = debug
            __class__._log = get_logger(__class__.__name__, self._dbg)
            self._log.debug('')
"""
__author__ = 'Yoichi Tanibayashi'
__date__   = '2026'

from logging import getLogger, StreamHandler, Formatter
from logging import DEBUG, INFO


class MyLogger:
    ROOT_NAME = 'solscat'

    FMT_HDR = '%(asctime)s %(levelname)s '
    FMT_LOC = '%(filename)s.%(name)s.%(funcName)s:%(lineno)d> '
    FMT_DATE = '%H:%M:%S'

    def __init__(self, name=ROOT_NAME):
        self._handler_fmt = Formatter(self.FMT_HDR + self.FMT_LOC +
                                      '%(message)s',
                                      datefmt=self.FMT_DATE)

        self._console_handler = StreamHandler()
        self._console_handler.setLevel(DEBUG)
        self._console_handler.setFormatter(self._handler_fmt)

        self._logger = getLogger(name)
        self._logger.setLevel(INFO)
        if not self._logger.handlers:
            self._logger.addHandler(self._console_handler)
        self._logger.propagate = False

    def get_logger(self, name, debug=False):
        logger = self._logger.getChild(name)
        if debug:
            logger.setLevel(DEBUG)
        else:
            logger.setLevel(INFO)
        return logger


_mylogger = MyLogger()


def get_logger(name, debug=False):
    """
    Parameters
    ----------
    name: str
        usually __class__.__name__ or __name__
    debug: bool
        DEBUG level if True, INFO otherwise
    """
    return _mylogger.get_logger(name, debug)
