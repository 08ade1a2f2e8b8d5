from hoodhash.kcas import KCas
from hoodhash.oracle import SerialTable
from hoodhash.table import RobinHoodTable

__all__ = ["KCas", "RobinHoodTable", "SerialTable"]
