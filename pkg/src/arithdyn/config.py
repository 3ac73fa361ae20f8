"""Budgets and depth caps shared across the toolkit.

Every limit that decides "computable exactly" versus "kept symbolic /
refused" lives here, so reports are reproducible from a config snapshot.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class ToolConfig:
    # Largest smallest-prime-factor table a bulk sweep may request.
    sieve_bound: int = 10_000_000
    # Largest prime index nth_prime will enumerate (q_1 = 2).
    prime_index_budget: int = 10_000_000
    # Bit budget for materialising a factored natural as a plain integer.
    # 2^65536 (65537 bits) fits; towers like 2^(2^65536) stay symbolic.
    bit_budget: int = 4_000_000
    # Brute-force oracle limits: tuple-enumeration count for Jordan,
    # plain input size for everything else.
    oracle_tuple_budget: int = 100_000_000
    oracle_value_budget: int = 10_000
    # inverse_phi refuses targets above this.
    inverse_phi_budget: int = 1_000_000
    # Scheme depth caps (defaults are where exact representation, possibly
    # symbolic, is still meaningful).
    depth_cap_phi_anti: int = 10_000
    depth_cap_d_anti: int = 5
    depth_cap_omega_anti: int = 5
    depth_cap_smallomega_anti: int = 6
    depth_cap_psi_orbit: int = 10_000
    depth_cap_j2_orbit: int = 10_000

    def replace(self, **overrides) -> "ToolConfig":
        return dataclasses.replace(self, **overrides)

    def snapshot(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_file(cls, path: str) -> "ToolConfig":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**raw)


DEFAULT_CONFIG = ToolConfig()
