# Makes 'lowdegree' a package
VERSION_STRING = "lowdegree 0.3.0 (low-degree learning testbench)"
__version__ = "0.3.0"
