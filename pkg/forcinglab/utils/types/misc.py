from dataclasses import dataclass
from typing import Any, Optional, Union

from omegaconf import DictConfig, OmegaConf
from omegaconf.errors import OmegaConfBaseException

from forcinglab.errors import InputError

Layer = Optional[Union[dict, DictConfig]]


def parse_structured(schema: Any, *layers: Layer) -> DictConfig:
    """Merge layers over the structured schema, later layers winning, and freeze the result.

    Unknown keys and values of the wrong type are reported as InputError naming the key.
    """
    merged = OmegaConf.structured(schema)
    for layer in layers:
        if layer is None:
            continue
        try:
            merged = OmegaConf.merge(merged, layer)
        except OmegaConfBaseException as e:
            raise InputError(str(e).splitlines()[0]) from None
    OmegaConf.set_readonly(merged, True)
    return merged


class Configurable(object):
    @dataclass
    class Config:
        pass

    cfg: Config  # add this to every subclass to enable static type checking

    def __init__(self, *layers: Layer, **kwargs) -> None:
        self.cfg = parse_structured(self.Config, *layers)
        self.configure(**kwargs)

    def configure(self, **kwargs) -> None:
        raise NotImplementedError
