"""Декораторы для логирования действий."""

import functools
import time
from typing import Any, Callable, Dict, Optional

from yangbaxter_hub.logging_config import get_logger


def _describe_subject(args, kwargs) -> Dict[str, str]:
    """Извлекает вид и размер объекта из аргументов вызова."""
    context = {"kind": "N/A", "size": "N/A"}
    candidates = list(args[:1]) + [kwargs[k] for k in ("s", "b", "n", "m") if k in kwargs]
    for subject in candidates:
        if hasattr(subject, "sigma"):
            context["kind"], context["size"] = "solution", str(subject.n)
        elif hasattr(subject, "mul") and hasattr(subject, "m"):
            context["kind"], context["size"] = "brace", str(subject.m)
        elif isinstance(subject, int) and not isinstance(subject, bool):
            context["size"] = str(subject)
        else:
            continue
        break
    return context


def log_action(func: Optional[Callable] = None, *, action: str = None, verbose: bool = False):
    """
    Декоратор для логирования действий.

    Args:
        func: Функция для декорирования (передается при использовании без скобок).
        action: Название действия (если None, используется имя функции).
        verbose: Подробное логирование с временем выполнения.

    Returns:
        Декорированная функция.
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            logger = get_logger()

            action_name = action or func.__name__.upper()
            log_context = {"action": action_name, "result": "OK"}
            log_context.update(_describe_subject(args, kwargs))

            start_time = time.time()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                log_context["result"] = "ERROR"
                logger.error(
                    "%s failed: %s: %s", action_name, e.__class__.__name__, e,
                    extra=log_context,
                )
                raise

            execution_time = time.time() - start_time
            if verbose:
                logger.info(
                    "%s done in %.3fs", action_name, execution_time, extra=log_context
                )
            else:
                logger.info("%s done", action_name, extra=log_context)

            return result

        return wrapper

    if func is None:
        # @log_action(action="CENSUS", verbose=True)
        return decorator
    else:
        # @log_action
        return decorator(func)


def timing_decorator(func: Callable) -> Callable:
    """Декоратор для измерения времени выполнения."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        start_time = time.time()
        result = func(*args, **kwargs)
        end_time = time.time()

        get_logger().debug(
            "%s took %.3fs", func.__name__, end_time - start_time,
            extra={"action": "TIMING"},
        )

        return result

    return wrapper
