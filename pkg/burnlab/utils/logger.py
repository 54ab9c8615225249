# ./burnlab/utils/logger.py

import os
import logging
from logging.handlers import RotatingFileHandler

from burnlab.utils.config_loader import config


class CustomLogger:
    def __init__(self, name: str, loglevel=None):
        self.logger = logging.getLogger("BurnLab")
        if loglevel is None:
            loglevel = getattr(logging, str(config.get("logging.level", "INFO")).upper(), logging.INFO)
        self.logger.setLevel(loglevel)

        log_dir = config.get("logging.log_dir", "./log")
        if not os.path.exists(log_dir):
            try:
                os.makedirs(log_dir)
            except OSError:
                log_dir = None

        env = os.environ.get("env", config.get("logging.env", "dev"))

        if log_dir and not any(isinstance(h, RotatingFileHandler) for h in self.logger.handlers):
            try:
                fh = RotatingFileHandler(
                    filename=os.path.join(log_dir, "burnlab_{}.log".format(env)),
                    maxBytes=5 * 1024 * 1024,
                    backupCount=3,
                    encoding="utf-8"
                )
                fh.setLevel(loglevel)
                formatter = logging.Formatter("[%(asctime)s] %(levelname)s: %(message)s")
                fh.setFormatter(formatter)
                self.logger.addHandler(fh)
            except PermissionError:
                pass

        if not any(type(h) is logging.StreamHandler for h in self.logger.handlers):
            ch = logging.StreamHandler()
            ch.setLevel(loglevel)
            formatter = logging.Formatter("[%(asctime)s] %(levelname)s: %(message)s")
            ch.setFormatter(formatter)
            self.logger.addHandler(ch)

    def getlog(self):
        return self.logger
