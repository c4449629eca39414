# utils/logger.py
import logging
import os
import sys
import traceback
import json
import time
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from contextlib import contextmanager
import inspect

# .env files may carry LOG_LEVEL and LAB_* overrides
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

# Record attributes that belong to logging itself and never go into JSON extras
_RESERVED_ATTRS = {
    'args', 'asctime', 'created', 'exc_info', 'exc_text', 'filename', 'funcName',
    'id', 'levelname', 'levelno', 'lineno', 'module', 'msecs', 'message', 'msg',
    'name', 'pathname', 'process', 'processName', 'relativeCreated', 'stack_info',
    'thread', 'threadName', 'taskName',
}

LEVELS = {
    'DEBUG': logging.DEBUG,
    'INFO': logging.INFO,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
    'CRITICAL': logging.CRITICAL,
}


class ColourFormatter(logging.Formatter):
    """Console formatter that colours the level when stderr is a terminal"""

    COLOURS = {
        'DEBUG': '\033[94m',
        'INFO': '\033[92m',
        'WARNING': '\033[93m',
        'ERROR': '\033[91m',
        'CRITICAL': '\033[1;91m',
        'RESET': '\033[0m',
    }

    def format(self, record):
        message = super().format(record)
        if record.levelname in self.COLOURS and sys.stderr.isatty():
            return f"{self.COLOURS[record.levelname]}{message}{self.COLOURS['RESET']}"
        return message


class JsonFormatter(logging.Formatter):
    """One JSON object per record, extras included"""

    def format(self, record):
        data = {
            'timestamp': datetime.fromtimestamp(record.created).isoformat(),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
            'file': record.pathname,
            'line': record.lineno,
        }
        if record.exc_info:
            data['exception'] = {
                'type': record.exc_info[0].__name__,
                'message': str(record.exc_info[1]),
                'traceback': traceback.format_exception(*record.exc_info),
            }
        for key, value in record.__dict__.items():
            if key in _RESERVED_ATTRS:
                continue
            try:
                json.dumps({key: value})
                data[key] = value
            except (TypeError, OverflowError):
                data[key] = str(value)
        return json.dumps(data)


class Logger:
    _instances = {}

    @classmethod
    def get_logger(cls, name=None):
        """Get or create the logger for a module name"""
        if name is None:
            frame = inspect.stack()[1]
            module = inspect.getmodule(frame[0])
            name = module.__name__ if module else "lozenge_lab"

        if name not in cls._instances:
            cls._instances[name] = cls(name)
        return cls._instances[name]

    def __init__(self, name="lozenge_lab"):
        self.name = name
        self.logger = logging.getLogger(name)

        if self.logger.handlers:
            return

        log_level_str = os.environ.get('LOG_LEVEL', 'WARNING').upper()
        console_level_str = os.environ.get('CONSOLE_LOG_LEVEL', log_level_str).upper()
        file_level_str = os.environ.get('FILE_LOG_LEVEL', log_level_str).upper()

        log_level = LEVELS.get(log_level_str, logging.WARNING)
        console_level = LEVELS.get(console_level_str, log_level)
        file_level = LEVELS.get(file_level_str, log_level)

        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        # stdout belongs to command output, so the console handler writes to stderr
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(console_level)
        console_handler.setFormatter(ColourFormatter('%(asctime)s - %(levelname)s - %(name)s - %(message)s'))
        self.logger.addHandler(console_handler)

        log_dir = os.environ.get('LOG_DIR')
        if log_dir:
            Path(log_dir).mkdir(parents=True, exist_ok=True)
            if os.environ.get('LOG_JSON_FORMAT', 'false').lower() == 'true':
                file_formatter = JsonFormatter()
            else:
                file_formatter = logging.Formatter(
                    '%(asctime)s - %(name)s - %(levelname)s - %(pathname)s:%(lineno)d - %(message)s'
                )
            file_handler = RotatingFileHandler(
                os.path.join(log_dir, f"lozenge_lab_{datetime.now().strftime('%Y%m%d')}.log"),
                maxBytes=int(os.environ.get('LOG_MAX_FILE_SIZE', 10 * 1024 * 1024)),
                backupCount=int(os.environ.get('LOG_BACKUP_COUNT', 5)),
            )
            file_handler.setLevel(file_level)
            file_handler.setFormatter(file_formatter)
            self.logger.addHandler(file_handler)

        self.logger.debug(f"Logger initialized with level={log_level_str}, "
                          f"console={console_level_str}, file={file_level_str}")

    def debug(self, message, *args, **kwargs):
        self.logger.debug(message, *args, **kwargs)

    def info(self, message, *args, **kwargs):
        self.logger.info(message, *args, **kwargs)

    def warning(self, message, *args, **kwargs):
        self.logger.warning(message, *args, **kwargs)

    def error(self, message, *args, **kwargs):
        self.logger.error(message, *args, **kwargs)

    @contextmanager
    def log_time(self, operation_name, level=logging.DEBUG):
        """Log how long a block took"""
        start_time = time.perf_counter()
        yield
        elapsed = time.perf_counter() - start_time
        self.logger.log(level, f"{operation_name} completed in {elapsed:.4f} seconds")


def get_logger(name=None):
    return Logger.get_logger(name)
