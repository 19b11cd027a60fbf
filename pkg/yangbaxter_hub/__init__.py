"""
YangBaxter Hub - инволютивные решения уравнения Янга–Бакстера, левые скобы и класс Деорнуа.
"""

__version__ = "0.1.0"
__author__ = "Gafarov M25_555"
