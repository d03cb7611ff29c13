"""Shared fixtures: the bundled dataset pipeline and small file-based networks."""

from __future__ import annotations

import pytest

from riskroute.config import BUNDLED_CONFIG, build_pipeline, load_config
from riskroute.sweep import alpha_sweep


@pytest.fixture(scope="session")
def bundled_pipeline():
    return build_pipeline(load_config(BUNDLED_CONFIG))


@pytest.fixture(scope="session")
def bundled_sweep(bundled_pipeline):
    return alpha_sweep(bundled_pipeline.instance, engine="exact")


SMALL_ROADS = """road_id,road_type,heavy_vehicle_flow
R1,central_barrier,6943
R2,central_barrier,535
R3,single_two_way,560
R4,central_safety_lane,1200
R5,single_one_way,800
"""

SMALL_ARCS = """from,to,segment_road_id,segment_length_km,tolls_money
d,a,R1,30.0,5.0
d,b,R2,40.0,0.0
d,c,R3,25.0,0.0
a,b,R1,12.0,2.5
a,b,R4,8.0,
a,c,R2,35.0,0.0
b,c,R3,15.0,1.0
"""

SMALL_INSTANCE = """vehicle_count = 2
capacity = 10
depot = "d"

[[nodes]]
id = "d"
name = "Depot"
demand = 0.0

[[nodes]]
id = "a"
name = "A"
demand = 6.0

[[nodes]]
id = "b"
name = "B"
demand = 5.0

[[nodes]]
id = "c"
name = "C"
demand = 4.0
"""


@pytest.fixture()
def small_files(tmp_path):
    """roads/arcs/instance files for a 4-node, 2-vehicle problem."""
    (tmp_path / "roads.csv").write_text(SMALL_ROADS)
    (tmp_path / "arcs.csv").write_text(SMALL_ARCS)
    (tmp_path / "instance.toml").write_text(SMALL_INSTANCE)
    return tmp_path
