"""Multi-camera person tracking and fusion toolkit.

Kalman filtering of per-camera detections (constant velocity or constant
acceleration), base-plane trajectory fusion (weighted sum and winner-take-all)
and staged MSE evaluation, with a synthetic scenario generator for
reproducible experiments.
"""

from trackfuse._core import (  # noqa: F401
    BBox,
    CameraModel,
    CameraSample,
    CameraScore,
    ConfigError,
    DegenerateProjection,
    Detection,
    FilterState,
    FusedRun,
    FusionConfig,
    Homography,
    IoError,
    MissSpec,
    ModelKind,
    MotionModel,
    MseReport,
    MseStats,
    NoHealthySource,
    NoOverlap,
    NoSource,
    NoiseConfig,
    Point2,
    ScenarioConfig,
    ScenarioOutput,
    SingularHomography,
    SingularInnovation,
    StagedInput,
    StageResult,
    Track,
    TrackPoint,
    TrackerConfig,
    TruthInit,
    UnsortedInput,
    WtaChoice,
    camera_score,
    centroid,
    fuse_ground_truth,
    fuse_sequences,
    fuse_weighted,
    fuse_wta,
    init_filter,
    inverse,
    mse,
    observation_matrix,
    per_frame_squared_error,
    predict,
    project,
    project_trajectory,
    run_cli,
    run_tracker,
    simulate,
    staged_report,
    state_dim,
    step,
    transition_matrix,
    update,
    validate_homography,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
