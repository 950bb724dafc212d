from .analyzer import Analyzer
