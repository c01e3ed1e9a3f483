"""
Запуск команд bounds, sweep и verify с параметрами из конфига.

Если в рабочей папке есть config.yaml, то он накладывается поверх стандартного sample_config.yaml.
"""
import sys

from tvbounds.main import main


if __name__ == '__main__':
    sys.exit(main())
