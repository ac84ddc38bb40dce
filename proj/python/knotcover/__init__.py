"""Branched-cover worlds seen through a knot-shaped portal."""

import json

from ._knotcover import (
    PROTOCOL_VERSION,
    Error,
    GenericityError,
    GeometryError,
    GroupError,
    SceneError,
    Session,
    Universe,
    builtin_scene_names,
    parse_frame_state,
    parse_move_request,
    scene_json,
    validate_scene,
)

__all__ = [
    "PROTOCOL_VERSION",
    "Error",
    "GenericityError",
    "GeometryError",
    "GroupError",
    "SceneError",
    "Session",
    "Universe",
    "builtin_scene_names",
    "frame",
    "parse_frame_state",
    "parse_move_request",
    "scene",
    "scene_json",
    "step",
    "validate_scene",
]


def scene(name_or_path):
    """Scene description as a dict."""
    return json.loads(scene_json(name_or_path))


def frame(session):
    """Current frame state of a session as a dict."""
    return json.loads(session.frame_json())


def step(session, dt=1.0 / 60, move=(0.0, 0.0, 0.0), look=(0.0, 0.0)):
    """Advances a session and returns the new frame state as a dict."""
    return json.loads(session.step(dt, tuple(move), look[0], look[1]))
