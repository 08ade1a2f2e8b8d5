from .functional.fixtures import cli_runner, kcas, small_oracle, small_table, words

__all__ = ["cli_runner", "kcas", "small_oracle", "small_table", "words"]
