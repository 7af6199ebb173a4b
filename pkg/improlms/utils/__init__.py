from improlms.utils import arr, log, tictoc
from improlms.utils.tictoc import Tic

__all__ = [
    "arr",
    "log",
    "tictoc",
    "Tic",
]
