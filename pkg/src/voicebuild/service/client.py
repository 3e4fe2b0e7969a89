"""Thin HTTP client used by the command line's ``--server`` mode."""

import httpx

from ..errors import VoiceBuildError


def _post(base_url, path, payload, client=None):
    client = client or httpx.Client(timeout=120.0)
    try:
        resp = client.post(base_url.rstrip("/") + path, json=payload)
    except httpx.HTTPError as exc:
        raise VoiceBuildError(f"request to {base_url} failed: {exc}") from None
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise VoiceBuildError(f"server error {resp.status_code}: {detail}")
    return resp


def phonemise_remote(base_url, words, client=None):
    return _post(base_url, "/phonemise", {"words": list(words)}, client).json()["pronunciations"]


def synthesize_remote(base_url, text, config=None, client=None):
    return _post(base_url, "/synthesize", {"text": text, "config": dict(config or {})}, client).content
