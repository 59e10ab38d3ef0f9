# polarcoulomb/utils/logging_setup.py
import logging
import logging.config
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

import yaml

from polarcoulomb.utils.constants import LOG_ROTATION_BACKUP_COUNT, LOG_ROTATION_SIZE_MB

DEBUG_LOGGERS = [
    'POLAR-CLI', 'QuarticAnalysis', 'HeunMap',
    'Bifurcation', 'Variational', 'RadialODE',
]


def _log_file(log_dir: Path, pattern: str, command: str) -> Path:
    date_str = datetime.now().strftime("%Y%m%d")
    return log_dir / pattern.format(command=command, date=date_str)


def setup_logging(command: str, debug: bool = False, log_to_file: bool = False,
                  log_dir: str = "logs", filename_pattern: str = "{command}_{date}.log",
                  max_size_mb: int = LOG_ROTATION_SIZE_MB,
                  backup_count: int = LOG_ROTATION_BACKUP_COUNT,
                  log_level: Optional[str] = None) -> logging.Logger:
    """
    Richtet hierarchisches Logging ein

    Args:
        command: CLI-Unterbefehl (Teil des Dateinamens)
        debug: Debug-Modus aktivieren
        log_to_file: Rotierende Log-Datei zusätzlich zur Konsole
        log_dir: Verzeichnis der Log-Dateien
        filename_pattern: Muster mit {command} und {date}
        max_size_mb: Rotationsgröße
        backup_count: Anzahl Rotationsdateien
        log_level: Konsolen-Level (Standard aus der YAML)
    """
    directory = Path(log_dir)
    log_file = _log_file(directory, filename_pattern, command)
    config_file = Path(__file__).parent / "logging_config.yaml"

    if config_file.exists():
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                config = yaml.safe_load(f)

            handlers = config.get('handlers', {})
            if log_to_file and 'file' in handlers:
                directory.mkdir(parents=True, exist_ok=True)
                handlers['file']['filename'] = str(log_file)
                handlers['file']['maxBytes'] = max_size_mb * 1024 * 1024
                handlers['file']['backupCount'] = backup_count
            else:
                # Ohne Datei-Handler: aus allen Loggern entfernen
                handlers.pop('file', None)
                for logger_cfg in list(config.get('loggers', {}).values()) + [config.get('root', {})]:
                    if 'handlers' in logger_cfg:
                        logger_cfg['handlers'] = [h for h in logger_cfg['handlers'] if h != 'file']

            if log_level and 'console' in handlers:
                handlers['console']['level'] = log_level

            if debug:
                for logger_name in DEBUG_LOGGERS:
                    if logger_name in config.get('loggers', {}):
                        config['loggers'][logger_name]['level'] = 'DEBUG'
                if 'console' in handlers:
                    handlers['console']['level'] = 'DEBUG'

            logging.config.dictConfig(config)

            logger = logging.getLogger('POLAR-CLI')
            logger.debug("=" * 80)
            logger.debug(f"📝 Hierarchisches Logging initialisiert für '{command}'")
            if log_to_file:
                logger.debug(f"📁 Log-Datei: {log_file}")
            logger.debug(f"🔧 Modus: {'DEBUG' if debug else 'STANDARD'}")
            logger.debug("=" * 80)
            return logger

        except Exception as e:
            print(f"⚠️ Fehler beim Laden von logging_config.yaml: {e}", file=sys.stderr)
            print("Fallback auf Standard-Logging...", file=sys.stderr)

    # Fallback: Standard-Logging
    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG if debug else logging.INFO)
    logger.handlers.clear()

    formatter = logging.Formatter(
        fmt="%(asctime)s | %(levelname)-8s | %(name)-16s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    if log_to_file:
        directory.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=max_size_mb * 1024 * 1024,
            backupCount=backup_count,
            encoding="utf-8"
        )
        file_handler.setFormatter(formatter)
        file_handler.setLevel(logging.DEBUG)
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    console_handler.setLevel(logging.DEBUG if debug else logging.WARNING)
    logger.addHandler(console_handler)

    logging.debug(f"📝 Standard-Logging initialisiert für '{command}'")
    return logging.getLogger('POLAR-CLI')
