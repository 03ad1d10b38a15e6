"""
Интерфейс командной строки для frobsplit.
"""
