"""Little-endian helpers for the binary artifact formats."""

import struct

from .errors import FormatError


class Writer:
    def __init__(self):
        self._parts = []

    def raw(self, data):
        self._parts.append(bytes(data))

    def u8(self, v):
        self._parts.append(struct.pack("<B", v))

    def i8(self, v):
        self._parts.append(struct.pack("<b", v))

    def u16(self, v):
        self._parts.append(struct.pack("<H", v))

    def u32(self, v):
        self._parts.append(struct.pack("<I", v))

    def f64(self, v):
        self._parts.append(struct.pack("<d", v))

    def string(self, s):
        data = s.encode("utf-8")
        self.u32(len(data))
        self._parts.append(data)

    def blob(self, data):
        self.u32(len(data))
        self._parts.append(bytes(data))

    def getvalue(self):
        return b"".join(self._parts)


class Reader:
    def __init__(self, data, what="artifact"):
        self.data = memoryview(data)
        self.pos = 0
        self.what = what

    def take(self, n):
        if self.pos + n > len(self.data):
            raise FormatError(
                f"truncated {self.what}: need {n} bytes at offset {self.pos}, "
                f"only {len(self.data) - self.pos} left")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return bytes(chunk)

    def _unpack(self, fmt, n):
        return struct.unpack(fmt, self.take(n))[0]

    def u8(self):
        return self._unpack("<B", 1)

    def i8(self):
        return self._unpack("<b", 1)

    def u16(self):
        return self._unpack("<H", 2)

    def u32(self):
        return self._unpack("<I", 4)

    def f64(self):
        return self._unpack("<d", 8)

    def string(self):
        n = self.u32()
        try:
            return self.take(n).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"invalid UTF-8 in {self.what}") from exc

    def blob(self):
        return self.take(self.u32())

    def expect_magic(self, magic):
        got = self.take(len(magic))
        if got != magic:
            raise FormatError(f"bad magic: expected {magic!r}, found {got!r}")

    def at_end(self):
        return self.pos == len(self.data)
