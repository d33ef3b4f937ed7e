"""Lazily built fixture objects shared across test modules."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from bicotwist.braiding import construct_braiding
from bicotwist.instances import BUILTIN_NAMES, Instance, builtin_instance
from bicotwist.metric import Metric
from bicotwist.twist import metric_twist, sigma_twist, twist_algebra, twist_bimodule, xi_maps

NAMES = BUILTIN_NAMES
WITH_METRIC = tuple(n for n in NAMES if n != "FIX-Z4-1dim")


@dataclass(eq=False)
class Bundle:
    inst: Instance

    @property
    def A(self):
        return self.inst.algebra

    @cached_property
    def M(self):
        return self.inst.bimodule

    @cached_property
    def maps(self):
        return xi_maps(self.Mt)

    @cached_property
    def b(self):
        # built on the same tensor square that xi uses
        return construct_braiding(self.M, self.maps.base_square)

    @cached_property
    def g(self) -> Metric | None:
        gm = self.inst.gmat
        return None if gm is None else Metric.from_scalars(self.b, gm)

    @cached_property
    def c(self):
        return self.inst.cocycle

    @cached_property
    def Ag(self):
        return twist_algebra(self.A, self.c)

    @cached_property
    def Mt(self):
        return twist_bimodule(self.M, self.c, self.Ag)

    @cached_property
    def st(self):
        return sigma_twist(self.Mt, self.maps, self.b)

    @cached_property
    def tm(self):
        return metric_twist(self.g, self.Mt, self.maps, self.st.constructed)


@lru_cache(maxsize=None)
def bundle(name: str) -> Bundle:
    return Bundle(builtin_instance(name))
