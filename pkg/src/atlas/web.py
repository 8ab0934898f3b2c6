"""HTTP layer: a thin JSON translation over AtlasService.

Identity is a bare `X-Person-Id` header (no password auth; the service is
meant for a closed community deployment). Request bodies are parsed by hand
so every failure mode produces the same {code, message} envelope.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .analytics import AddSource, EventKind, ViewName
from .core import AtlasService, ego_payload, link_payload, person_payload
from .graph_core import (SYSTEM, AtlasError, AuthorizationError,
                         DuplicateLinkError, OfficeLocation, ValidationError)
from .persistence import parse_rfc3339

IDENTITY_HEADER = "X-Person-Id"

_STATUS = {
    "validation_error": 400,
    "unauthenticated": 401,
    "forbidden": 403,
    "not_found": 404,
    "duplicate_link": 409,
}


class UnauthenticatedError(AtlasError):
    code = "unauthenticated"


def _identity(request: Request) -> Optional[str]:
    value = request.headers.get(IDENTITY_HEADER)
    if value is not None:
        value = value.strip()
    return value or None


def _require_identity(request: Request) -> str:
    actor = _identity(request)
    if actor is None:
        raise UnauthenticatedError(f"missing {IDENTITY_HEADER} header")
    if actor == SYSTEM:
        raise AuthorizationError("the reserved system identity cannot act here")
    return actor


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception:
        raise ValidationError("request body is not valid JSON")
    if not isinstance(body, dict):
        raise ValidationError("request body must be a JSON object")
    return body


def _field(body: dict, name: str, required: bool = True) -> Optional[str]:
    value = body.get(name)
    if value is None:
        if required:
            raise ValidationError(f"missing field {name!r}")
        return None
    if not isinstance(value, str) or not value.strip():
        raise ValidationError(f"field {name!r} must be a non-empty string")
    return value


def _bool_param(raw: Optional[str], default: bool) -> bool:
    if raw is None or raw == "":
        return default
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes"):
        return True
    if lowered in ("0", "false", "no"):
        return False
    raise ValidationError(f"expected a boolean, got {raw!r}")


def _int_param(raw: Optional[str], default: int) -> int:
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"expected an integer, got {raw!r}")


def create_app(service: AtlasService) -> FastAPI:
    app = FastAPI(title="atlas", docs_url=None, redoc_url=None)

    @app.exception_handler(AtlasError)
    async def _domain_error(request: Request, exc: AtlasError):
        content = {"code": exc.code, "message": str(exc)}
        if isinstance(exc, DuplicateLinkError):
            content["existing_id"] = exc.existing_id
        return JSONResponse(status_code=_STATUS.get(exc.code, 400),
                            content=content)

    # -- people ---------------------------------------------------------------

    @app.get("/api/people")
    async def search_people(request: Request,
                            q: Optional[str] = None, limit: Optional[str] = None):
        n = _int_param(limit, 20)
        if q:
            people = service.store.search_people(q, n)
        else:
            people = list(service.store.people())[:max(n, 0)]
        return {"people": [person_payload(p) for p in people]}

    @app.post("/api/people", status_code=201)
    async def add_person(request: Request):
        actor = _identity(request) or SYSTEM
        body = await _json_body(request)
        office = None
        raw_office = body.get("office")
        if raw_office is not None:
            if not isinstance(raw_office, dict):
                raise ValidationError("field 'office' must be an object")
            try:
                office = OfficeLocation(
                    floor_id=str(raw_office["floor_id"]),
                    x=float(raw_office["x"]), y=float(raw_office["y"]))
            except (KeyError, TypeError, ValueError):
                raise ValidationError(
                    "field 'office' needs floor_id, x and y")
        person = service.add_person(
            actor,
            display_name=_field(body, "display_name"),
            group=_field(body, "group"),
            avatar_ref=_field(body, "avatar_ref", required=False),
            office=office,
            external_id=_field(body, "external_id", required=False))
        return person_payload(person)

    # -- ego and global views -------------------------------------------------

    @app.get("/api/me/ego")
    async def my_ego(request: Request):
        me = _require_identity(request)
        return ego_payload(service.ego_view(me, me))

    @app.get("/api/people/{person_id}/ego")
    async def person_ego(request: Request, person_id: str):
        viewer = _identity(request)
        return ego_payload(service.ego_view(viewer, person_id))

    @app.get("/api/global")
    async def global_view(request: Request,
                          include_unconfirmed: Optional[str] = None):
        include = _bool_param(include_unconfirmed, True)
        return service.global_payload(include_unconfirmed=include)

    # -- physical -------------------------------------------------------------

    @app.get("/api/physical/floors")
    async def floors(request: Request):
        return {"floors": [
            {"floor_id": f.floor_id, "name": f.name, "image_ref": f.image_ref,
             "width": f.width, "height": f.height}
            for f in service.floors()]}

    @app.get("/api/physical/floors/{floor_id}")
    async def floor_detail(request: Request, floor_id: str):
        plan, occupants = service.floor_occupants(floor_id)
        return {
            "floor": {"floor_id": plan.floor_id, "name": plan.name,
                      "image_ref": plan.image_ref, "width": plan.width,
                      "height": plan.height},
            "occupants": [person_payload(p) for p in occupants],
        }

    # -- suggestions and links --------------------------------------------------

    @app.get("/api/suggestions")
    async def suggestions(request: Request, limit: Optional[str] = None):
        me = _require_identity(request)
        n = _int_param(limit, service.config.suggestion_limit)
        return {"suggestions": service.suggestions(me, n)}

    @app.post("/api/links", status_code=201)
    async def create_link(request: Request):
        actor = _require_identity(request)
        body = await _json_body(request)
        source = None
        raw_source = _field(body, "source", required=False)
        if raw_source is not None:
            try:
                source = AddSource(raw_source)
            except ValueError:
                raise ValidationError(f"unknown source {raw_source!r}")
        view = None
        raw_view = _field(body, "view", required=False)
        if raw_view is not None:
            try:
                view = ViewName(raw_view)
            except ValueError:
                raise ValidationError(f"unknown view {raw_view!r}")
        link = service.create_link(
            actor, a=_field(body, "a"), b=_field(body, "b"),
            link_type=_field(body, "type", required=False) or "interaction",
            source=source, view=view)
        return link_payload(link)

    @app.post("/api/links/{link_id}/confirm")
    async def confirm_link(request: Request, link_id: str):
        actor = _require_identity(request)
        return link_payload(service.confirm_link(actor, link_id))

    @app.delete("/api/links/{link_id}")
    async def delete_link(request: Request, link_id: str):
        actor = _require_identity(request)
        return {"deleted": link_payload(service.delete_link(actor, link_id))}

    # -- client events and analytics -----------------------------------------------

    @app.post("/api/events", status_code=201)
    async def record_event(request: Request):
        actor = _require_identity(request)
        body = await _json_body(request)
        try:
            kind = EventKind(_field(body, "kind"))
        except ValueError:
            raise ValidationError(f"unknown event kind {body.get('kind')!r}")
        view = None
        raw_view = _field(body, "view", required=False)
        if raw_view is not None:
            try:
                view = ViewName(raw_view)
            except ValueError:
                raise ValidationError(f"unknown view {raw_view!r}")
        timestamp = None
        raw_ts = _field(body, "timestamp", required=False)
        if raw_ts is not None:
            try:
                timestamp = parse_rfc3339(raw_ts)
            except ValueError:
                raise ValidationError(f"bad timestamp {raw_ts!r}")
        event = service.record_client_event(
            actor, kind, view=view,
            query=_field(body, "query", required=False),
            timestamp=timestamp)
        return {"recorded": event.kind.value}

    @app.get("/api/stats/views")
    async def stats_views(request: Request):
        return {"seconds_per_view": service.stats_views()}

    @app.get("/api/stats/sources")
    async def stats_sources(request: Request):
        return {"add_links_by_source": service.stats_sources()}

    @app.get("/api/stats/confirmation")
    async def stats_confirmation(request: Request):
        return {"confirmation_rate": service.stats_confirmation()}

    @app.get("/api/stats/third-party")
    async def stats_third_party(request: Request):
        return {"third_party_fraction": service.stats_third_party()}

    # -- rendered maps -----------------------------------------------------------

    @app.get("/api/render/global.svg")
    async def render_global(request: Request, seed: Optional[str] = None):
        svg = service.render_global_svg(seed=_int_param(seed, 0))
        return Response(content=svg, media_type="image/svg+xml")

    static_dir = service.config.static_dir
    if static_dir is not None and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="static")

    return app
