from sqlalchemy import Column, String, DateTime, Integer, Float, Text, ForeignKey, Enum as SQLEnum
from sqlalchemy.orm import declarative_base, relationship
from datetime import datetime
import enum
import uuid

Base = declarative_base()


class ExperimentStatus(str, enum.Enum):
    PROCESSING = "Processing"
    FAILED = "Failed"
    READY = "Ready"


class Experiment(Base):
    __tablename__ = "experiments"

    experiment_id = Column(String, primary_key=True, default=lambda: str(uuid.uuid4()))
    created_at = Column(DateTime, default=datetime.utcnow, nullable=False)
    updated_at = Column(DateTime, default=datetime.utcnow, onupdate=datetime.utcnow, nullable=False)
    status = Column(SQLEnum(ExperimentStatus), default=ExperimentStatus.PROCESSING, nullable=False)
    problem = Column(String, nullable=False)
    base_seed = Column(String, nullable=False)  # uint64 does not fit a signed BIGINT
    trials_per_cell = Column(Integer, nullable=False)
    spec_json = Column(Text, nullable=False)
    pilot_variance = Column(Float, nullable=True)
    recommended_trials = Column(Integer, nullable=True)

    trials = relationship("Trial", back_populates="experiment", cascade="all, delete-orphan")

    def __repr__(self):
        return f"<Experiment(experiment_id={self.experiment_id}, problem={self.problem}, status={self.status})>"


class Trial(Base):
    __tablename__ = "trials"

    id = Column(Integer, primary_key=True, autoincrement=True)
    experiment_id = Column(String, ForeignKey("experiments.experiment_id", ondelete="CASCADE"), nullable=False)
    n = Column(Integer, nullable=False)
    d = Column(Integer, nullable=True)
    tightness = Column(Float, nullable=True)
    oracle = Column(String, nullable=False)
    trial_index = Column(Integer, nullable=False)
    seed = Column(String, nullable=False)
    z_full = Column(Float, nullable=False)
    z_dc = Column(Float, nullable=False)
    t_full = Column(Float, nullable=False)
    t_dc = Column(Float, nullable=False)
    s_f = Column(Float, nullable=False)
    t_f = Column(Float, nullable=False)

    experiment = relationship("Experiment", back_populates="trials")

    __table_args__ = (
        {"sqlite_autoincrement": True},
    )

    def __repr__(self):
        return f"<Trial(experiment_id={self.experiment_id}, n={self.n}, oracle={self.oracle}, trial_index={self.trial_index})>"
