"""
Qiana Compiler - FastAPI Application Entry Point
"""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from src.config import settings
from src.modules.runner import router as runner_router

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan events."""
    logger.info(f"{settings.PROJECT_NAME} v{settings.PROJECT_VERSION} starting...")
    logger.info(f"Prover: {settings.QIANA_PROVER} (timeout {settings.PROVER_TIMEOUT}s)")

    yield

    logger.info("Shutting down...")


# Create FastAPI app
app = FastAPI(
    title=settings.PROJECT_NAME,
    version=settings.PROJECT_VERSION,
    description="Compiles Qiana theories to TPTP and runs external theorem provers on them",
    lifespan=lifespan,
)

# CORS middleware for frontend access
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],  # Configure properly in production
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Register routers
app.include_router(runner_router.router)
app.include_router(runner_router.tasks_router)


@app.get("/")
def root():
    """Health check endpoint."""
    return {
        "message": f"{settings.PROJECT_NAME} is Online",
        "version": settings.PROJECT_VERSION,
        "docs": "/docs",
        "environment": settings.ENVIRONMENT,
    }


@app.get("/health")
def health_check():
    """Detailed health check for load balancers."""
    return {
        "status": "healthy",
        "prover": settings.QIANA_PROVER,
    }
