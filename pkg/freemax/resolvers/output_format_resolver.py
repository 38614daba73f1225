from typing import Optional, TextIO

from freemax.objects.configs.output_format import OutputFormat


class OutputFormatResolver:
    @staticmethod
    def resolve(requested: Optional[str], stream: TextIO) -> OutputFormat:
        if requested is not None:
            return OutputFormat(requested.lower().strip())

        isatty = getattr(stream, "isatty", None)
        if callable(isatty) and isatty():
            return OutputFormat.Human

        return OutputFormat.Csv
