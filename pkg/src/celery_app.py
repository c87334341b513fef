"""
Celery application configuration for background prover runs.
"""

from celery import Celery
from src.config import settings

# Create Celery app
celery_app = Celery(
    "qiana",
    broker=settings.REDIS_URL,
    backend=settings.REDIS_URL,
    include=["src.tasks"],  # Include task modules
)

# Celery configuration
celery_app.conf.update(
    # Task settings
    task_serializer="json",
    accept_content=["json"],
    result_serializer="json",
    timezone="UTC",
    enable_utc=True,

    # Task execution settings; a run never outlives its prover timeout by much
    task_track_started=True,
    task_time_limit=int(settings.MODAL_PROVER_TIMEOUT) + 60,
    task_soft_time_limit=int(settings.MODAL_PROVER_TIMEOUT) + 30,

    # Result backend settings
    result_expires=3600,  # Results expire after 1 hour

    # Worker settings: one prover process per worker slot
    worker_prefetch_multiplier=1,
    worker_concurrency=settings.PROVER_PARALLEL_GOALS,

    # Retry settings
    task_acks_late=True,  # Acknowledge after completion
    task_reject_on_worker_lost=True,  # Requeue if worker dies
)

celery_app.conf.task_routes = {
    "src.tasks.prove_theory_task": {"queue": "provers"},
}
