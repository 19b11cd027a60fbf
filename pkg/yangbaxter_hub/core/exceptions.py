"""
Пользовательские исключения для обработки ошибок в приложении.
"""


class DegreeMismatchError(ValueError):
    """Исключение при несовпадении степеней перестановок."""

    def __init__(self, left: int, right: int):
        """
        Инициализирует исключение несовпадения степеней.

        Аргументы:
            left: Степень первой перестановки.
            right: Степень второй перестановки.
        """
        self.left = left
        self.right = right
        message = f"Степени перестановок не совпадают: {left} и {right}"
        super().__init__(message)


class TableFormatError(ValueError):
    """Исключение при некорректной таблице (σ-таблица или таблица Кэли)."""

    def __init__(self, what: str, reason: str, row: int = None, column: int = None):
        """
        Инициализирует исключение некорректной таблицы.

        Аргументы:
            what: Название таблицы.
            reason: Причина ошибки.
            row: Номер строки (если известен).
            column: Номер столбца (если известен).
        """
        self.what = what
        self.reason = reason
        self.row = row
        self.column = column
        message = f"Некорректная таблица {what}: {reason}"
        if row is not None:
            message += f" (строка {row}"
            message += f", столбец {column})" if column is not None else ")"
        super().__init__(message)


class BoundExceededError(ValueError):
    """Исключение при превышении настроенной границы перебора."""

    def __init__(self, what: str, size: int, bound: int):
        """
        Инициализирует исключение превышения границы.

        Аргументы:
            what: Что именно ограничено.
            size: Фактический размер.
            bound: Допустимая граница.
        """
        self.what = what
        self.size = size
        self.bound = bound
        message = f"Превышена граница для {what}: {size} > {bound}"
        super().__init__(message)


class InvalidParameterError(ValueError):
    """Исключение при недопустимом параметре конструктора."""

    def __init__(self, name: str, value, reason: str):
        """
        Инициализирует исключение недопустимого параметра.

        Аргументы:
            name: Имя параметра.
            value: Переданное значение.
            reason: Причина отказа.
        """
        self.name = name
        self.value = value
        self.reason = reason
        message = f"Недопустимый параметр {name}={value!r}: {reason}"
        super().__init__(message)


class NotHomomorphismError(Exception):
    """Исключение, если отображение не является гомоморфизмом."""

    def __init__(self, reason: str, witness=None):
        self.reason = reason
        self.witness = witness
        message = f"Отображение не является гомоморфизмом: {reason}"
        if witness is not None:
            message += f" (свидетель {witness})"
        super().__init__(message)


class SubgroupError(Exception):
    """Исключение, если подмножество не является подгруппой."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Подмножество не является подгруппой: {reason}")


class ConstructionError(Exception):
    """Исключение при нарушении условий построения решения."""

    def __init__(self, condition: str, witness=None):
        """
        Инициализирует исключение построения.

        Аргументы:
            condition: Нарушенное условие.
            witness: Свидетель нарушения (если есть).
        """
        self.condition = condition
        self.witness = witness
        message = f"Данные построения отклонены: {condition}"
        if witness is not None:
            message += f" (свидетель {witness})"
        super().__init__(message)


class InternalConsistencyError(Exception):
    """Исключение при нарушении внутренней согласованности вычислений."""

    def __init__(self, check: str, witness=None):
        self.check = check
        self.witness = witness
        message = f"Нарушена внутренняя согласованность: {check}"
        if witness is not None:
            message += f" (свидетель {witness})"
        super().__init__(message)


class CatalogParseError(ValueError):
    """Исключение при разборе записи каталога."""

    def __init__(self, line: int, column: int, reason: str):
        """
        Инициализирует исключение разбора.

        Аргументы:
            line: Номер строки (с единицы).
            column: Номер столбца (с единицы).
            reason: Причина ошибки.
        """
        self.line = line
        self.column = column
        self.reason = reason
        message = f"Ошибка разбора в строке {line}, столбце {column}: {reason}"
        super().__init__(message)


class FormatVersionError(ValueError):
    """Исключение при несовпадении версии формата каталога."""

    def __init__(self, found: str, expected: str):
        self.found = found
        self.expected = expected
        message = f"Неподдерживаемая версия формата '{found}', ожидается '{expected}'"
        super().__init__(message)


class IntegrityError(Exception):
    """Исключение при коллизии хэша с отличающимся содержимым."""

    def __init__(self, key: str):
        self.key = key
        message = f"Нарушена целостность хранилища: запись {key} уже существует с другим содержимым"
        super().__init__(message)


class BraceSpecError(ValueError):
    """Исключение при некорректной спецификации скобы."""

    def __init__(self, spec: str, reason: str):
        self.spec = spec
        self.reason = reason
        super().__init__(f"Некорректная спецификация скобы '{spec}': {reason}")


class FixtureNotFoundError(KeyError):
    """Исключение при запросе неизвестного встроенного примера."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Неизвестный пример '{name}'")

    def __str__(self) -> str:
        return self.args[0]
