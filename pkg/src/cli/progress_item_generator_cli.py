# Python
from typing import Iterable

# 3rd Party
import tqdm
from tqdm.contrib.logging import logging_redirect_tqdm

# 1st Party



class ProgressItemGeneratorCLI():
    """ Loop wrapper that reports progress on the terminal.

    Trial loops, bench suites and brute-force searches accept any callable with this signature, so library code runs
    unchanged with or without progress bars. Log records emitted inside the loop are routed through tqdm, keeping the
    bar intact.
    """

    def __init__(self, disable: bool = False):
        self.disable = disable

    def __call__(self, elements: Iterable, **kwargs):
        """ Yields a single element and triggers progress printing via tqdm. """
        with logging_redirect_tqdm():
            for one_element in tqdm.tqdm(elements, disable=self.disable, **kwargs):
                yield one_element
