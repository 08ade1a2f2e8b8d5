from .tables import SMALL_MASK, cli_runner, kcas, small_oracle, small_table, words

__all__ = ["SMALL_MASK", "cli_runner", "kcas", "small_oracle", "small_table", "words"]
