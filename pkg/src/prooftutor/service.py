"""HTTP service: documents, rule catalog, prove tasks, stored proofs.

Prove tasks run on a small worker pool.  A task moves from queued to
running to done (or cancelled while still queued); interruption raises
a cooperative signal the search polls between expansions, so an
interrupted proof still returns a consistent tree with pending nodes.
Completed proofs are persisted with consecutive version numbers per
(goal, selection) key.
"""

from __future__ import annotations

import os
import queue
import threading
import time
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .documents import (
    Document, FormulaRef, build_knowledge_base, outline,
    OutlineEnvironment, OutlineSection, ResolveError,
)
from .formulas import render_formula
from .presentation import render_proof_nl, tree_to_view
from .rules import rule_catalog
from .search import (
    ConfigError, Outcome, ProofResult, ProverConfig, Status, NotProved,
    proof_result_from_json, prove, simplify, SIMPLIFY_OPTIONS,
)
from .store import ProofStore, proof_key

__all__ = ["create_app", "TaskManager"]

DEFAULT_DATA_DIR = "prooftutor_data"


class RefModel(BaseModel):
    document: str
    environment: str
    label: str

    def to_ref(self) -> FormulaRef:
        return FormulaRef(self.document, self.environment, self.label)


class ProveRequest(BaseModel):
    goal: RefModel
    selection: list[RefModel] = Field(default_factory=list)
    config: Optional[dict] = None


class SimplifyRequest(BaseModel):
    options: list[str] = Field(default_factory=lambda: ["prune_failures"])


@dataclass
class ProveTask:
    task_id: str
    goal_ref: FormulaRef
    selection: tuple[FormulaRef, ...]
    config: ProverConfig
    state: str = "queued"  # queued | running | done | cancelled
    result: Optional[ProofResult] = None
    key: Optional[str] = None
    version: Optional[int] = None
    created_at: float = field(default_factory=time.time)
    finished_at: Optional[float] = None
    cancel_event: threading.Event = field(default_factory=threading.Event)


class TaskManager:
    """FIFO queue with a bounded worker pool, one proof per worker."""

    def __init__(self, documents: list[Document], store: ProofStore, workers: int):
        self.documents = documents
        self.store = store
        self.tasks: dict[str, ProveTask] = {}
        self.lock = threading.Lock()
        self.queue: "queue.Queue[Optional[str]]" = queue.Queue()
        self.workers = [
            threading.Thread(target=self._worker, daemon=True,
                             name=f"prover-{i}")
            for i in range(workers)]

    def start(self) -> None:
        for worker in self.workers:
            worker.start()

    def stop(self) -> None:
        for _ in self.workers:
            self.queue.put(None)
        for worker in self.workers:
            worker.join(timeout=2)

    def submit(self, goal_ref: FormulaRef, selection: tuple[FormulaRef, ...],
               config: ProverConfig) -> str:
        task = ProveTask(uuid.uuid4().hex[:12], goal_ref, selection, config)
        with self.lock:
            self.tasks[task.task_id] = task
        self.queue.put(task.task_id)
        return task.task_id

    def get(self, task_id: str) -> ProveTask:
        with self.lock:
            if task_id not in self.tasks:
                raise KeyError(task_id)
            return self.tasks[task_id]

    def interrupt(self, task_id: str) -> ProveTask:
        with self.lock:
            task = self.tasks.get(task_id)
            if task is None:
                raise KeyError(task_id)
            if task.state in ("done", "cancelled"):
                raise ValueError(task.state)
            if task.state == "queued":
                task.state = "cancelled"
                task.finished_at = time.time()
            else:
                task.cancel_event.set()
            return task

    def _worker(self) -> None:
        while True:
            task_id = self.queue.get()
            if task_id is None:
                return
            with self.lock:
                task = self.tasks[task_id]
                if task.state == "cancelled":
                    continue
                task.state = "running"
            try:
                self._run(task)
            finally:
                with self.lock:
                    task.state = "done"
                    task.finished_at = time.time()

    def _run(self, task: ProveTask) -> None:
        goal = _resolve_formula(self.documents, task.goal_ref)
        selection = tuple(ref for ref in task.selection if ref != task.goal_ref)
        kb = build_knowledge_base(self.documents, set(selection))
        result = prove(goal, kb, task.config, cancel=task.cancel_event.is_set)
        goal_text = render_formula(goal)
        key = proof_key(goal_text, selection)
        version = self.store.append(
            key, goal_text, selection, task.config.to_json(), result)
        task.result = result
        task.key = key
        task.version = version


def _resolve_formula(documents: list[Document], ref: FormulaRef):
    for doc in documents:
        if doc.id != ref.document:
            continue
        env = doc.environment(ref.environment)
        for label, formula in env.formulas:
            if label == ref.label:
                return formula
        raise ResolveError(f"no label {ref.label!r} in {ref.document}/{ref.environment}")
    raise ResolveError(f"no document {ref.document!r}")


def _outline_json(node) -> dict:
    if isinstance(node, OutlineSection):
        return {"type": "section", "title": node.title,
                "children": [_outline_json(child) for child in node.children]}
    return {"type": "env", "kind": node.kind, "name": node.name,
            "formulas": [{"label": label, "formula": text}
                         for label, text in node.formulas]}


def create_app(documents: list[Document],
               data_dir: Optional[str] = None,
               workers: Optional[int] = None) -> FastAPI:
    """The HTTP application, with its own worker pool and proof store."""
    data_dir = data_dir or os.environ.get("PROOFTUTOR_DATA", DEFAULT_DATA_DIR)
    if workers is None:
        workers = int(os.environ.get("PROOFTUTOR_WORKERS", "2"))
    store = ProofStore(data_dir)
    manager = TaskManager(documents, store, workers)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        manager.start()
        yield
        manager.stop()

    app = FastAPI(title="prooftutor", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"])
    app.state.manager = manager
    app.state.store = store

    by_id = {doc.id: doc for doc in documents}

    @app.get("/documents")
    def list_documents():
        return [{"id": doc.id, "title": doc.title} for doc in documents]

    @app.get("/documents/{doc_id}/outline")
    def document_outline(doc_id: str):
        doc = by_id.get(doc_id)
        if doc is None:
            raise HTTPException(404, f"no document {doc_id!r}")
        return {"id": doc.id, "title": doc.title,
                "outline": [_outline_json(node) for node in outline(doc)]}

    @app.get("/rules")
    def rules():
        return [{"id": r.id, "display_name": r.display_name,
                 "default_priority": r.default_priority,
                 "default_active": r.default_active, "kind": r.kind}
                for r in rule_catalog()]

    @app.post("/prove", status_code=202)
    def submit_prove(request: ProveRequest):
        goal_ref = request.goal.to_ref()
        selection = tuple(ref.to_ref() for ref in request.selection)
        try:
            _resolve_formula(documents, goal_ref)
            build_knowledge_base(documents, set(selection))
        except ResolveError as err:
            raise HTTPException(404, str(err))
        try:
            config = ProverConfig.from_json(request.config or {})
        except ConfigError as err:
            raise HTTPException(422, str(err))
        task_id = manager.submit(goal_ref, selection, config)
        return {"task_id": task_id}

    @app.get("/tasks/{task_id}")
    def get_task(task_id: str):
        try:
            task = manager.get(task_id)
        except KeyError:
            raise HTTPException(404, f"no task {task_id!r}")
        body = {"task_id": task.task_id, "state": task.state,
                "created_at": task.created_at}
        if task.state == "done" and task.result is not None:
            body.update({
                "outcome": task.result.outcome.value,
                "version": task.version,
                "stats": {"nodes_expanded": task.result.nodes_expanded,
                          "elapsed_ms": task.result.elapsed_ms},
                "proof": f"/proofs/{task.key}/{task.version}",
            })
        return body

    @app.post("/tasks/{task_id}/interrupt")
    def interrupt_task(task_id: str):
        try:
            task = manager.interrupt(task_id)
        except KeyError:
            raise HTTPException(404, f"no task {task_id!r}")
        except ValueError as err:
            raise HTTPException(409, f"task already {err}")
        return {"task_id": task.task_id, "state": task.state}

    def _load_record(key: str, version: int) -> dict:
        record = store.get(key, version)
        if record is None:
            raise HTTPException(404, f"no proof {key}/{version}")
        return record

    def _prose_json(record: dict, tree) -> Optional[dict]:
        refs = {FormulaRef(**ref) for ref in record["selection"]}
        kb = build_knowledge_base(documents, refs)
        try:
            simplified = simplify(tree, {"prune_failures"})
        except NotProved:
            return None
        return render_proof_nl(simplified, kb).to_json()

    @app.get("/proofs/{key}/{version}")
    def get_proof(key: str, version: int, view: str = "json"):
        record = _load_record(key, version)
        result = proof_result_from_json(record["result"])
        if view == "tree":
            return {"key": key, "version": version,
                    "outcome": record["result"]["outcome"],
                    "tree": tree_to_view(result.tree)}
        if view == "prose":
            prose = _prose_json(record, result.tree)
            if prose is None:
                raise HTTPException(409, "proof is not successful")
            return {"key": key, "version": version, "prose": prose}
        if view == "json":
            return {"key": key, "version": version,
                    "goal": record["goal"],
                    "selection": record["selection"],
                    "config": record["config"],
                    "outcome": record["result"]["outcome"],
                    "stats": record["result"]["stats"],
                    "tree": tree_to_view(result.tree),
                    "prose": _prose_json(record, result.tree)}
        raise HTTPException(422, f"unknown view {view!r}")

    @app.post("/proofs/{key}/{version}/simplify")
    def simplify_proof(key: str, version: int, request: SimplifyRequest):
        record = _load_record(key, version)
        options = set(request.options)
        unknown = options - SIMPLIFY_OPTIONS
        if unknown:
            raise HTTPException(422, f"unknown simplify options: {sorted(unknown)}")
        result = proof_result_from_json(record["result"])
        try:
            simplified = simplify(result.tree, options)
        except NotProved:
            raise HTTPException(409, "proof is not successful")
        refs = {FormulaRef(**ref) for ref in record["selection"]}
        kb = build_knowledge_base(documents, refs)
        return {"key": key, "version": version,
                "tree": tree_to_view(simplified),
                "prose": render_proof_nl(simplified, kb).to_json()}

    return app
