# main.py
"""
Главная точка входа приложения YangBaxter Hub.
"""
import sys

from yangbaxter_hub.cli.interface import run


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
