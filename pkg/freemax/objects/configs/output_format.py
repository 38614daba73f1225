from enum import Enum


class OutputFormat(str, Enum):
    Csv = "csv"
    Json = "json"
    Human = "human"
