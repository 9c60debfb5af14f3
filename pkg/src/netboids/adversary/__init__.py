from netboids.adversary.de import DEConfig, LearnResult, de_crossover, de_mutate, de_run, evolve
from netboids.adversary.fitness import Observation, learning_error, population_learning_errors
from netboids.adversary.genome import GENES, Genome
from netboids.adversary.sessions import (
    CyclePlan,
    OnlineCycle,
    PredictResult,
    offline_session,
    online_schedule,
    online_session,
    predict,
)

__all__ = [
    "CyclePlan", "DEConfig", "GENES", "Genome", "LearnResult", "Observation", "OnlineCycle",
    "PredictResult", "de_crossover", "de_mutate", "de_run", "evolve", "learning_error",
    "offline_session", "online_schedule", "online_session", "population_learning_errors", "predict",
]
