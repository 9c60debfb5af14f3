from netboids.swarm.state import Boid, SwarmState, Trajectory
from netboids.swarm.vector import Vec2

__all__ = ["Boid", "SwarmState", "Trajectory", "Vec2"]
