# Python
from enum import Enum
from typing import Callable, Generic, TypeVar

# 3rd Party

# 1st Party


# Inspiration: https://realpython.com/factory-method-python/

Product = TypeVar("Product")


class ObjectFactory(Generic[Product]):
    """ Maps enum keys (e.g. CurVariant) to the callables that build the matching object. """

    def __init__(self):
        self.builders: dict[Enum, Callable[..., Product]] = {}

    def register_builder(self, key: Enum, builder: Callable[..., Product]):
        self.builders[key] = builder

    def create(self, key: Enum, **kwargs) -> Product:
        builder = self.builders.get(key)
        if not builder:
            raise ValueError(f"No builder registered for {key}, known: {[k.name for k in self.builders]}")
        return builder(**kwargs)
