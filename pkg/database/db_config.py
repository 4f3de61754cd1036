from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import sessionmaker, Session
from models.database import Base
from pathlib import Path
from typing import Optional
import os

DB_FILENAME = "experiment.db"


def database_url_for(out_dir: Optional[str] = None) -> str:
    """
    Resolve the experiment store URL.

    DATABASE_URL wins when set; otherwise the store is a SQLite file inside
    the experiment output directory (or the working directory).
    """
    url = os.getenv("DATABASE_URL")
    if url:
        return url
    directory = Path(out_dir) if out_dir else Path.cwd()
    return f"sqlite:///{(directory / DB_FILENAME).as_posix()}"


def create_db_engine(url: str) -> Engine:
    return create_engine(
        url,
        echo=os.getenv("DB_ECHO", "false").lower() == "true",
        pool_pre_ping=True,
    )


def init_db(engine: Engine) -> None:
    """Create tables if they do not exist yet."""
    Base.metadata.create_all(bind=engine)


def create_session(url: str) -> Session:
    engine = create_db_engine(url)
    init_db(engine)
    return sessionmaker(autocommit=False, autoflush=False, bind=engine)()
