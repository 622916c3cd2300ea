"""
Problem-file input and report output for the command-line tools.
"""

from .problem_file import ProblemFile, load_problem, parse_problem
from .reports import render, render_csv, render_json

__all__ = [
    'ProblemFile',
    'load_problem',
    'parse_problem',
    'render',
    'render_csv',
    'render_json',
]
