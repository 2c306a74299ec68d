"""
Protocol transcripts as JSON lines.

One message per line: {round, sender, register_dims, payload_digest}. Quantum
payloads are the reduced density matrix of the transmitted registers; classical
payloads are the transmitted bits. With ``dump_payloads`` the raw little-endian
complex128 bytes are kept as base64 so a run can be replayed.
"""

import base64
import json
import logging
from dataclasses import asdict, dataclass
from typing import List, Optional

import numpy as np

from quantum.exceptions import PreconditionError
from utils.helpers import payload_bytes, payload_digest

log = logging.getLogger(__name__)

SENDERS = ('alice', 'bob')


@dataclass(frozen=True)
class TranscriptMessage:
    round: int
    sender: str
    register_dims: List[int]
    payload_digest: str
    payload: Optional[str] = None

    def to_dict(self):
        data = asdict(self)
        if self.payload is None:
            data.pop('payload')
        return data


class Transcript:
    """Append-only message log for one protocol run."""

    def __init__(self, dump_payloads=False):
        self.dump_payloads = dump_payloads
        self.messages: List[TranscriptMessage] = []

    def __len__(self):
        return len(self.messages)

    def record(self, round_no, sender, register_dims, payload):
        """
        append a message

        args:
            round_no: protocol round (0 for set-up messages)
            sender: 'alice' or 'bob'
            register_dims: dims of the quantum registers sent; [] for classical messages
            payload: density matrix, bit sequence or bytes
        """
        if sender not in SENDERS:
            raise PreconditionError(f"sender must be one of {SENDERS}, got {sender!r}")
        raw = payload_bytes(payload)
        msg = TranscriptMessage(
            round=int(round_no),
            sender=sender,
            register_dims=[int(d) for d in register_dims],
            payload_digest=payload_digest(raw),
            payload=base64.b64encode(raw).decode('ascii') if self.dump_payloads else None,
        )
        self.messages.append(msg)
        log.debug(f"transcript: round {msg.round} {sender} dims {msg.register_dims}")
        return msg

    def to_jsonl(self):
        return ''.join(json.dumps(m.to_dict(), sort_keys=True) + '\n' for m in self.messages)

    @classmethod
    def from_jsonl(cls, text):
        transcript = cls()
        for n, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                msg = TranscriptMessage(
                    round=int(data['round']),
                    sender=data['sender'],
                    register_dims=list(data['register_dims']),
                    payload_digest=data['payload_digest'],
                    payload=data.get('payload'),
                )
            except (KeyError, TypeError, ValueError) as e:
                raise PreconditionError(f"transcript line {n} is malformed: {e}") from e
            transcript.dump_payloads = transcript.dump_payloads or msg.payload is not None
            transcript.messages.append(msg)
        return transcript

    @staticmethod
    def decode_payload(msg: TranscriptMessage):
        """
        rebuild a dumped payload and check it against the digest

        returns a (d, d) complex matrix for quantum messages, a flat complex array otherwise
        """
        if msg.payload is None:
            raise PreconditionError(f"round {msg.round} {msg.sender} message has no dumped payload")
        raw = base64.b64decode(msg.payload)
        if payload_digest(raw) != msg.payload_digest:
            raise PreconditionError(f"round {msg.round} {msg.sender} payload does not match its digest")
        values = np.frombuffer(raw, dtype='<c16').copy()
        if msg.register_dims:
            d = int(np.prod(msg.register_dims))
            return values.reshape(d, d)
        return values
