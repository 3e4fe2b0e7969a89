"""HTTP front end: synthesis and phonemisation over a loaded voice, plus an
optional artifact repository served with the standard layout."""

import os
import tempfile
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import JSONResponse

from ..dsp import write_wav
from ..errors import VoiceBuildError
from ..phonemiser import format_pronunciation
from ..synth import synthesize
from ..voicedb import load_voice
from .schemas import (ErrorOut, PhonemiseRequest, PhonemiseResponse, PronunciationOut,
                      SynthesizeRequest, VoiceInfo)


def create_app(voice=None, repo_dir=None):
    """``voice`` may be a loaded VoicePackage or a path to an .mvox file."""
    if voice is not None and not hasattr(voice, "db"):
        voice = load_voice(Path(voice).read_bytes())
    repo_root = Path(repo_dir).resolve() if repo_dir is not None else None
    app = FastAPI(title="voicebuild")
    app.state.voice = voice

    @app.exception_handler(VoiceBuildError)
    async def _domain_error(request, exc):
        body = ErrorOut(error=type(exc).__name__, detail=str(exc))
        return JSONResponse(status_code=422, content=body.model_dump())

    def require_voice():
        if app.state.voice is None:
            raise HTTPException(status_code=503, detail="no voice loaded")
        return app.state.voice

    @app.get("/health")
    def health():
        return {"status": "ok", "voice": app.state.voice is not None, "repository": repo_root is not None}

    @app.get("/voice", response_model=VoiceInfo)
    def voice_info():
        v = require_voice()
        return VoiceInfo(name=v.name, language=v.manifest.get("language", ""),
                         version=v.manifest.get("version", ""), sample_rate=v.db.sample_rate,
                         units=len(v.db.units), utterances=len(v.db.audio), config=v.config)

    @app.post("/phonemise", response_model=PhonemiseResponse)
    def phonemise(req: PhonemiseRequest):
        lang = require_voice().language
        if lang is None:
            raise HTTPException(status_code=503, detail="voice has no language component")
        out = []
        for word in req.words:
            pron = lang.phonemise(word)
            out.append(PronunciationOut(word=word, phones=list(pron.phones), stress=list(pron.stress),
                                        source=pron.source,
                                        notation=format_pronunciation(pron.phones, pron.stress)))
        return PhonemiseResponse(pronunciations=out)

    @app.post("/synthesize")
    def synth(req: SynthesizeRequest):
        clip = synthesize(req.text, require_voice(), req.config)
        return Response(content=write_wav(clip), media_type="audio/wav")

    def repo_file(path):
        if repo_root is None:
            raise HTTPException(status_code=404, detail="no repository configured")
        target = (repo_root / path).resolve()
        if repo_root not in target.parents:
            raise HTTPException(status_code=400, detail="path outside repository")
        return target

    @app.get("/repo/{path:path}")
    def repo_get(path: str):
        target = repo_file(path)
        if not target.is_file():
            raise HTTPException(status_code=404, detail=f"{path} not found")
        return Response(content=target.read_bytes(), media_type="application/octet-stream")

    @app.put("/repo/{path:path}", status_code=201)
    async def repo_put(path: str, request: Request):
        target = repo_file(path)
        data = await request.body()
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=".part-")
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        try:
            # link fails if the target exists, which keeps coordinates immutable
            os.link(tmp, target)
        except FileExistsError:
            raise HTTPException(status_code=409, detail=f"{path} already exists") from None
        finally:
            os.unlink(tmp)
        return {"stored": path}

    return app
