"""Deterministic 2-D boids with vision or graph neighborhoods, swarm metrics,
and a differential-evolution observer that tries to recover the boid rules."""

__version__ = "0.1.0"
