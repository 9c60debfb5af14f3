from netboids.neighborhood.generators import gen_ba, gen_er, gen_ws
from netboids.neighborhood.graph import Adjacency, load_edge_list, save_edge_list
from netboids.neighborhood.providers import (
    NetworkNeighborhood,
    VisionNeighborhood,
    network_neighbors,
    separation_neighbors,
    vision_neighbors,
)

__all__ = [
    "Adjacency",
    "NetworkNeighborhood",
    "VisionNeighborhood",
    "gen_ba",
    "gen_er",
    "gen_ws",
    "load_edge_list",
    "network_neighbors",
    "save_edge_list",
    "separation_neighbors",
    "vision_neighbors",
]
