from pydantic import BaseModel, Field


class PhonemiseRequest(BaseModel):
    words: list[str] = Field(min_length=1)


class PronunciationOut(BaseModel):
    word: str
    phones: list[str]
    stress: list[int]
    source: str
    notation: str


class PhonemiseResponse(BaseModel):
    pronunciations: list[PronunciationOut]


class SynthesizeRequest(BaseModel):
    text: str
    config: dict[str, str] = Field(default_factory=dict)


class VoiceInfo(BaseModel):
    name: str
    language: str
    version: str
    sample_rate: int
    units: int
    utterances: int
    config: dict[str, str]


class ErrorOut(BaseModel):
    error: str
    detail: str
