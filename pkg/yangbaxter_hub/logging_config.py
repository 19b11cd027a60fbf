"""Конфигурация логирования для приложения."""

import logging
import logging.handlers
import os

APP_LOGGER = "yangbaxter_hub"


class ContextFilter(logging.Filter):
    """Фильтр для добавления контекста в логи."""

    def filter(self, record):
        if not hasattr(record, "action"):
            record.action = "-"
        if not hasattr(record, "kind"):
            record.kind = "N/A"
        if not hasattr(record, "size"):
            record.size = "N/A"
        if not hasattr(record, "result"):
            record.result = "-"
        return True


def setup_logging(
    log_dir: str = "logs",
    log_file: str = "actions.log",
    level: int = logging.INFO,
    max_bytes: int = 10 * 1024 * 1024,  # 10 MB
    backup_count: int = 5,
    json_format: bool = False,
) -> logging.Logger:
    """Настройка логирования.

    Args:
        log_dir: Директория для логов
        log_file: Имя файла лога
        level: Уровень логирования
        max_bytes: Максимальный размер файла перед ротацией
        backup_count: Количество хранимых бекапов
        json_format: Использовать JSON формат

    Returns:
        Настроенный логгер
    """
    os.makedirs(log_dir, exist_ok=True)
    log_path = os.path.join(log_dir, log_file)

    logger = logging.getLogger(APP_LOGGER)
    logger.setLevel(level)

    # Повторный вызов не должен дублировать обработчики
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
        handler.close()

    if json_format:
        formatter = logging.Formatter(
            '{"timestamp": "%(asctime)s", "level": "%(levelname)s", '
            '"module": "%(name)s", "action": "%(action)s", '
            '"kind": "%(kind)s", "size": "%(size)s", '
            '"result": "%(result)s", "message": "%(message)s"}',
            datefmt="%Y-%m-%dT%H:%M:%S",
        )
    else:
        formatter = logging.Formatter(
            '%(levelname)s %(asctime)s %(action)s kind="%(kind)s" '
            'size="%(size)s" result="%(result)s" %(name)s: %(message)s',
            datefmt="%Y-%m-%dT%H:%M:%S",
        )

    context = ContextFilter()

    file_handler = logging.handlers.RotatingFileHandler(
        log_path, maxBytes=max_bytes, backupCount=backup_count, encoding="utf-8"
    )
    file_handler.setFormatter(formatter)
    file_handler.addFilter(context)
    logger.addHandler(file_handler)

    # Консоль служит побочным каналом: stdout остается для отчетов
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    console_handler.addFilter(context)
    console_handler.setLevel(
        logging.DEBUG if level == logging.DEBUG else logging.WARNING
    )
    logger.addHandler(console_handler)

    return logger


def get_logger(name: str = APP_LOGGER) -> logging.Logger:
    """Получение логгера.

    Args:
        name: Имя логгера

    Returns:
        Логгер
    """
    return logging.getLogger(name)
