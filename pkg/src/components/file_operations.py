# Python
from pathlib import Path

# 3rd Party

# 1st Party


class FileOperations():

    @staticmethod
    def ensure_directory(path_to_dir: Path) -> Path:
        """ Creates 'path_to_dir' (and any missing parents) and returns it. """
        path_to_dir = Path(path_to_dir)
        path_to_dir.mkdir(parents=True, exist_ok=True)
        return path_to_dir

    @staticmethod
    def read_utf8_string(path_to_file: Path) -> str:
        with open(path_to_file, 'r', encoding='utf-8') as file:
            return file.read()

    @staticmethod
    def write_utf8_string(path_to_file: Path, data: str):
        # Fixed newline so artifacts are byte-identical across platforms
        with open(path_to_file, 'w', encoding="utf-8", newline="\n") as file:
            file.write(data)
