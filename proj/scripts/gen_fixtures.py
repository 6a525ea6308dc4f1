#!/usr/bin/env python3
# Copyright (C) 2026 The DroidRisk Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the test fixtures under tests/data.

Fixture APKs are assembled with the standard-library zipfile module, binary
manifests with an independent AXML encoder, and dex payloads with an
independent assembler. Golden dumps come from independent paths: zip listings
from zipfile itself, manifest models from xml.etree on the source XML, and
method lists from the assembler's input records. The C++ parsers are tested
against these dumps, never against themselves.
"""

import hashlib
import json
import struct
import zipfile
import zlib
from pathlib import Path
from xml.etree import ElementTree

OUT = Path(__file__).resolve().parent.parent / "tests" / "data"
ANDROID_NS = "http://schemas.android.com/apk/res/android"
ANDROID_NAME_RESID = 0x01010003

# ---------------------------------------------------------------------------
# AXML encoder


def _pack_chunk(chunk_type, header_extra, body, header_size=None):
    if header_size is None:
        header_size = 8 + len(header_extra)
    size = 8 + len(header_extra) + len(body)
    return struct.pack("<HHI", chunk_type, header_size, size) + header_extra + body


def _encode_string_pool(strings, utf8):
    data = bytearray()
    offsets = []
    for s in strings:
        offsets.append(len(data))
        if utf8:
            enc = s.encode("utf-8")
            for ln in (len(s), len(enc)):
                if ln > 0x7F:
                    data += struct.pack("<BB", (ln >> 8) | 0x80, ln & 0xFF)
                else:
                    data += struct.pack("<B", ln)
            data += enc + b"\x00"
        else:
            units = s.encode("utf-16-le")
            n = len(units) // 2
            assert n <= 0x7FFF, "long strings not needed in fixtures"
            data += struct.pack("<H", n) + units + b"\x00\x00"
    while len(data) % 4:
        data += b"\x00"
    flags = 0x100 if utf8 else 0
    strings_start = 28 + 4 * len(strings)
    header_extra = struct.pack("<IIIII", len(strings), 0, flags, strings_start, 0)
    body = b"".join(struct.pack("<I", off) for off in offsets) + bytes(data)
    return _pack_chunk(0x0001, header_extra, body, header_size=28)


class AxmlWriter:
    """Compiles an ElementTree manifest into binary AXML.

    pool layout: mapped attribute-name strings first (paired with the
    resource map), then every other string in first-use order.
    """

    def __init__(self, root, utf8=True, strip_attr_names=False):
        self.root = root
        self.utf8 = utf8
        self.strip = strip_attr_names
        self.strings = ["" if strip_attr_names else "name"]
        self.index = {self.strings[0]: 0}

    def _idx(self, s):
        if s not in self.index:
            self.index[s] = len(self.strings)
            self.strings.append(s)
        return self.index[s]

    def _attr_record(self, ns_idx, name_idx, value_idx):
        # ns, name, rawValue, typedValue{size, res0, dataType=string, data}
        return struct.pack("<III", ns_idx, name_idx, value_idx) + struct.pack(
            "<HBBI", 8, 0, 0x03, value_idx
        )

    def _element_chunks(self, el, out):
        attrs = []
        for key, value in el.attrib.items():
            if key.startswith("{%s}" % ANDROID_NS):
                local = key.split("}", 1)[1]
                if local != "name":
                    continue  # only android:name is feature-relevant
                ns_idx = 0xFFFFFFFF if self.strip else self._idx(ANDROID_NS)
                attrs.append((ns_idx, 0, self._idx(value)))
            else:
                attrs.append((0xFFFFFFFF, self._idx(key), self._idx(value)))
        name_idx = self._idx(el.tag)
        attr_bytes = b"".join(self._attr_record(*a) for a in attrs)
        body = struct.pack(
            "<IIHHHHHH", 0xFFFFFFFF, name_idx, 0x14, 0x14, len(attrs), 0, 0, 0
        ) + attr_bytes
        out.append(_pack_chunk(0x0102, struct.pack("<II", 1, 0xFFFFFFFF), body))
        for child in el:
            self._element_chunks(child, out)
        end_body = struct.pack("<II", 0xFFFFFFFF, name_idx)
        out.append(_pack_chunk(0x0103, struct.pack("<II", 1, 0xFFFFFFFF), end_body))

    def encode(self):
        chunks = []
        ns_uri = self._idx(ANDROID_NS)
        ns_prefix = self._idx("android")
        ns_body = struct.pack("<II", ns_prefix, ns_uri)
        chunks.append(_pack_chunk(0x0100, struct.pack("<II", 1, 0xFFFFFFFF), ns_body))
        self._element_chunks(self.root, chunks)
        chunks.append(_pack_chunk(0x0101, struct.pack("<II", 1, 0xFFFFFFFF), ns_body))

        pool = _encode_string_pool(self.strings, self.utf8)
        resmap = _pack_chunk(0x0180, b"", struct.pack("<I", ANDROID_NAME_RESID))
        payload = pool + resmap + b"".join(chunks)
        return struct.pack("<HHI", 0x0003, 8, 8 + len(payload)) + payload


# ---------------------------------------------------------------------------
# DEX assembler


def encode_mutf8(s):
    out = bytearray()
    for ch in s:
        cp = ord(ch)
        if cp == 0:
            out += b"\xc0\x80"
        elif cp < 0x80:
            out.append(cp)
        elif cp < 0x800:
            out += bytes([0xC0 | (cp >> 6), 0x80 | (cp & 0x3F)])
        elif cp < 0x10000:
            out += bytes(
                [0xE0 | (cp >> 12), 0x80 | ((cp >> 6) & 0x3F), 0x80 | (cp & 0x3F)]
            )
        else:  # CESU-8 surrogate pair
            cp -= 0x10000
            for unit in (0xD800 + (cp >> 10), 0xDC00 + (cp & 0x3FF)):
                out += bytes(
                    [
                        0xE0 | (unit >> 12),
                        0x80 | ((unit >> 6) & 0x3F),
                        0x80 | (unit & 0x3F),
                    ]
                )
    return bytes(out)


def uleb128(n):
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def build_dex(methods, version=b"035", filler=0):
    """Assembles a dex whose method_ids are exactly `methods`.

    methods: list of (class_descriptor, method_name). All methods share one
    ()V prototype. `filler` appends junk strings to fatten the file.
    """
    strings = set(["V"])
    for cls, name in methods:
        strings.add(cls)
        strings.add(name)
    filler_strings = ["junk%08d" % i for i in range(filler)]
    strings.update(filler_strings)
    strings = sorted(strings)
    s_idx = {s: i for i, s in enumerate(strings)}

    types = sorted({cls for cls, _ in methods} | {"V"})
    t_idx = {t: i for i, t in enumerate(types)}

    method_ids = sorted((t_idx[cls], s_idx[name]) for cls, name in methods)

    header_size = 0x70
    string_ids_off = header_size
    type_ids_off = string_ids_off + 4 * len(strings)
    proto_ids_off = type_ids_off + 4 * len(types)
    method_ids_off = proto_ids_off + 12
    data_off = method_ids_off + 8 * len(method_ids)

    string_data = bytearray()
    string_offs = []
    for s in strings:
        string_offs.append(data_off + len(string_data))
        string_data += uleb128(len(s)) + encode_mutf8(s) + b"\x00"

    map_off = data_off + len(string_data)
    while map_off % 4:
        string_data += b"\x00"
        map_off += 1
    map_items = [
        (0x0000, 1, 0),  # header
        (0x0001, len(strings), string_ids_off),
        (0x0002, len(types), type_ids_off),
        (0x0003, 1, proto_ids_off),
        (0x0005, len(method_ids), method_ids_off),
        (0x2002, len(strings), data_off),
        (0x1000, 1, map_off),
    ]
    map_data = struct.pack("<I", len(map_items))
    for t, n, off in map_items:
        map_data += struct.pack("<HHII", t, 0, n, off)

    file_size = map_off + len(map_data)
    data_size = file_size - data_off

    body = bytearray()
    for off in string_offs:
        body += struct.pack("<I", off)
    for t in types:
        body += struct.pack("<I", s_idx[t])
    body += struct.pack("<III", s_idx["V"], t_idx["V"], 0)  # proto ()V
    for class_idx, name_idx in method_ids:
        body += struct.pack("<HHI", class_idx, 0, name_idx)
    body += string_data
    body += map_data

    header = bytearray(0x70)
    header[0:8] = b"dex\n" + version + b"\x00"
    struct.pack_into("<I", header, 32, file_size)
    struct.pack_into("<I", header, 36, header_size)
    struct.pack_into("<I", header, 40, 0x12345678)
    struct.pack_into("<I", header, 52, map_off)
    struct.pack_into("<II", header, 56, len(strings), string_ids_off)
    struct.pack_into("<II", header, 64, len(types), type_ids_off)
    struct.pack_into("<II", header, 72, 1, proto_ids_off)
    struct.pack_into("<II", header, 80, 0, 0)
    struct.pack_into("<II", header, 88, len(method_ids), method_ids_off)
    struct.pack_into("<II", header, 96, 0, 0)
    struct.pack_into("<II", header, 104, data_size, data_off)

    full = bytes(header) + bytes(body)
    assert len(full) == file_size
    sig = hashlib.sha1(full[32:]).digest()
    full = full[:12] + sig + full[32:]
    checksum = zlib.adler32(full[12:]) & 0xFFFFFFFF
    full = full[:8] + struct.pack("<I", checksum) + full[12:]
    return full


# ---------------------------------------------------------------------------
# manifest sources and the xml.etree oracle

MANIFEST_BASIC = """<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="com.example.basic">
  <uses-permission android:name="android.permission.INTERNET"/>
  <uses-permission android:name="android.permission.READ_SMS"/>
  <application>
    <activity android:name="com.example.basic.MainActivity">
      <intent-filter>
        <action android:name="android.intent.action.MAIN"/>
        <category android:name="android.intent.category.LAUNCHER"/>
      </intent-filter>
    </activity>
  </application>
</manifest>
"""

MANIFEST_RICH = """<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="com.example.rich">
  <uses-permission android:name="android.permission.INTERNET"/>
  <uses-permission android:name="android.permission.SEND_SMS"/>
  <uses-permission android:name="android.permission.READ_PHONE_STATE"/>
  <application>
    <activity android:name="com.example.rich.Main">
      <intent-filter>
        <action android:name="android.intent.action.VIEW"/>
        <category android:name="android.intent.category.BROWSABLE"/>
      </intent-filter>
      <intent-filter>
        <action android:name="android.intent.action.VIEW"/>
      </intent-filter>
    </activity>
    <activity-alias android:name="com.example.rich.Alias"/>
    <service android:name="com.example.rich.Svc">
      <intent-filter>
        <action android:name="android.intent.action.VIEW"/>
      </intent-filter>
    </service>
    <receiver android:name="com.example.rich.Rcv"/>
    <receiver android:name="com.example.rich.Rcv2"/>
    <provider android:name="com.example.rich.Prov"/>
  </application>
</manifest>
"""

MANIFEST_DUP = """<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="com.example.dup">
  <uses-permission android:name="android.permission.CAMERA"/>
  <uses-permission android:name="android.permission.CAMERA"/>
  <application>
    <service android:name="com.example.dup.Svc"/>
  </application>
</manifest>
"""

MANIFEST_MULTI = """<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="com.example.multi">
  <uses-permission android:name="android.permission.INTERNET"/>
  <application>
    <activity android:name="com.example.multi.Main"/>
  </application>
</manifest>
"""

MANIFEST_PLAIN = """<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="com.example.plain">
  <application/>
</manifest>
"""

MANIFEST_RENAME = """<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android"
    package="com.example.rename">
  <uses-permission android:name="android.permission.INTERNET"/>
  <uses-permission android:name="android.permission.READ_PHONE_STATE"/>
  <application>
    <activity android:name="com.example.rename.Main">
      <intent-filter>
        <action android:name="android.intent.action.MAIN"/>
        <category android:name="android.intent.category.LAUNCHER"/>
      </intent-filter>
    </activity>
    <service android:name="com.example.rename.Worker"/>
  </application>
</manifest>
"""


def oracle_manifest_model(xml_text):
    root = ElementTree.fromstring(xml_text)
    name_key = "{%s}name" % ANDROID_NS
    permissions = sorted(
        {
            el.get(name_key)
            for el in root.iter("uses-permission")
            if el.get(name_key)
        }
    )
    intents = {}
    for filt in root.iter("intent-filter"):
        for tag in ("action", "category"):
            for el in filt.iter(tag):
                value = el.get(name_key)
                if value:
                    intents[value] = intents.get(value, 0) + 1
    app = root.find("application")
    counts = [0, 0, 0, 0]
    if app is not None:
        for child in app:
            if child.tag in ("activity", "activity-alias"):
                counts[0] += 1
            elif child.tag == "service":
                counts[1] += 1
            elif child.tag == "receiver":
                counts[2] += 1
            elif child.tag == "provider":
                counts[3] += 1
    return {
        "package": root.get("package") or "",
        "permissions": permissions,
        "intents": intents,
        "components": counts,
    }


# ---------------------------------------------------------------------------
# fixture assembly


def write_zip(path, entries, method=zipfile.ZIP_DEFLATED):
    with zipfile.ZipFile(path, "w") as zf:
        for name, payload in entries:
            info = zipfile.ZipInfo(name, date_time=(2020, 1, 1, 0, 0, 0))
            info.compress_type = method
            info.create_system = 0
            zf.writestr(info, payload, compresslevel=6)


def zip_listing(path):
    out = []
    with zipfile.ZipFile(path) as zf:
        for info in zf.infolist():
            out.append(
                {
                    "name": info.filename,
                    "uncompressed_size": info.file_size,
                    "compressed_size": info.compress_size,
                    "crc32": info.CRC,
                    "method": "stored" if info.compress_type == 0 else "deflated",
                }
            )
    return sorted(out, key=lambda e: e["name"])


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    O = lambda s: ElementTree.fromstring(s)
    manifests = {}  # fixture -> oracle model
    dex_methods = {}  # fixture -> {entry: sorted "cls->name"}

    M_INVOKE = ("Ljava/lang/reflect/Method;", "invoke")
    M_LOADER = ("Ldalvik/system/DexClassLoader;", "<init>")
    M_DEVID = ("Landroid/telephony/TelephonyManager;", "getDeviceId")
    M_OBJ = ("Ljava/lang/Object;", "<init>")
    M_ONCREATE = ("Landroid/app/Activity;", "onCreate")

    def record(fixture, dexes):
        dex_methods[fixture] = {
            entry: sorted("%s->%s" % (c, m) for c, m in methods)
            for entry, methods in dexes.items()
        }

    basic_dex = build_dex(
        [M_OBJ, M_ONCREATE, M_INVOKE, ("Lcom/example/basic/MainActivity;", "onCreate")]
    )

    # 1/2: the same manifest as text and compiled, same dex, deflated
    write_zip(
        OUT / "app_text_basic.apk",
        [("AndroidManifest.xml", MANIFEST_BASIC), ("classes.dex", basic_dex)],
    )
    basic_methods = [M_OBJ, M_ONCREATE, M_INVOKE,
                     ("Lcom/example/basic/MainActivity;", "onCreate")]
    manifests["app_text_basic.apk"] = oracle_manifest_model(MANIFEST_BASIC)
    record("app_text_basic.apk", {"classes.dex": basic_methods})

    axml_basic = AxmlWriter(O(MANIFEST_BASIC), utf8=True).encode()
    write_zip(
        OUT / "app_axml_basic.apk",
        [("AndroidManifest.xml", axml_basic), ("classes.dex", basic_dex)],
    )
    manifests["app_axml_basic.apk"] = oracle_manifest_model(MANIFEST_BASIC)
    record("app_axml_basic.apk", {"classes.dex": basic_methods})

    # 3/4: rich manifest as utf-16 axml (stored) and as text
    rich_dex = build_dex([M_OBJ, ("Lcom/example/rich/Main;", "onCreate")])
    axml_rich = AxmlWriter(O(MANIFEST_RICH), utf8=False).encode()
    write_zip(
        OUT / "app_axml_utf16.apk",
        [("AndroidManifest.xml", axml_rich), ("classes.dex", rich_dex)],
        method=zipfile.ZIP_STORED,
    )
    manifests["app_axml_utf16.apk"] = oracle_manifest_model(MANIFEST_RICH)
    record("app_axml_utf16.apk", {"classes.dex": [
        M_OBJ, ("Lcom/example/rich/Main;", "onCreate")]})

    write_zip(
        OUT / "app_text_rich.apk",
        [("AndroidManifest.xml", MANIFEST_RICH), ("classes.dex", rich_dex)],
    )
    manifests["app_text_rich.apk"] = oracle_manifest_model(MANIFEST_RICH)
    record("app_text_rich.apk", {"classes.dex": [
        M_OBJ, ("Lcom/example/rich/Main;", "onCreate")]})

    # 5: two dex files; the loader API lives only in classes2.dex
    multi1 = build_dex([M_OBJ, ("Lcom/example/multi/A;", "run")])
    multi2 = build_dex([M_OBJ, M_LOADER, ("Lcom/example/multi/B;", "run")])
    write_zip(
        OUT / "app_multidex2.apk",
        [
            ("AndroidManifest.xml", MANIFEST_MULTI),
            ("classes.dex", multi1),
            ("classes2.dex", multi2),
        ],
    )
    manifests["app_multidex2.apk"] = oracle_manifest_model(MANIFEST_MULTI)
    record("app_multidex2.apk", {
        "classes.dex": [M_OBJ, ("Lcom/example/multi/A;", "run")],
        "classes2.dex": [M_OBJ, M_LOADER, ("Lcom/example/multi/B;", "run")],
    })

    # 6: ten dex files, device-id getter hidden in classes7.dex
    ten_entries = [("AndroidManifest.xml", AxmlWriter(O(MANIFEST_MULTI)).encode())]
    ten_record = {}
    for i in range(1, 11):
        name = "classes.dex" if i == 1 else "classes%d.dex" % i
        methods = [M_OBJ, ("Lcom/example/multi/Part%d;" % i, "run")]
        if i == 7:
            methods.append(M_DEVID)
        ten_entries.append((name, build_dex(methods)))
        ten_record[name] = list(methods)
    write_zip(OUT / "app_multidex10.apk", ten_entries)
    manifests["app_multidex10.apk"] = oracle_manifest_model(MANIFEST_MULTI)
    record("app_multidex10.apk", ten_record)

    # 7: manifest only, no dex
    write_zip(OUT / "app_nodex.apk", [("AndroidManifest.xml", MANIFEST_PLAIN)])
    manifests["app_nodex.apk"] = oracle_manifest_model(MANIFEST_PLAIN)
    record("app_nodex.apk", {})

    # 8: duplicate permission declaration, stored
    dup_dex = build_dex([M_OBJ])
    write_zip(
        OUT / "app_dup_perm.apk",
        [("AndroidManifest.xml", MANIFEST_DUP), ("classes.dex", dup_dex)],
        method=zipfile.ZIP_STORED,
    )
    manifests["app_dup_perm.apk"] = oracle_manifest_model(MANIFEST_DUP)
    record("app_dup_perm.apk", {"classes.dex": [M_OBJ]})

    # 9: obfuscated axml — attribute name string stripped, resource map only
    axml_obf = AxmlWriter(O(MANIFEST_BASIC), utf8=True, strip_attr_names=True).encode()
    write_zip(
        OUT / "app_axml_resmap.apk",
        [("AndroidManifest.xml", axml_obf), ("classes.dex", basic_dex)],
    )
    manifests["app_axml_resmap.apk"] = oracle_manifest_model(MANIFEST_BASIC)
    record("app_axml_resmap.apk", {"classes.dex": basic_methods})

    # 10/11: identical apps except user-defined class and method names
    rename_a = build_dex(
        [M_OBJ, M_INVOKE, ("Lcom/example/aaa/Alpha;", "doWork"),
         ("Lcom/example/aaa/Beta;", "helper")]
    )
    rename_b = build_dex(
        [M_OBJ, M_INVOKE, ("Lcom/example/zzz/Gamma;", "x1"),
         ("Lcom/example/zzz/DeltaLonger;", "y2longer")]
    )
    for tag, dex in (("a", rename_a), ("b", rename_b)):
        write_zip(
            OUT / ("app_rename_%s.apk" % tag),
            [("AndroidManifest.xml", MANIFEST_RENAME), ("classes.dex", dex)],
        )
        manifests["app_rename_%s.apk" % tag] = oracle_manifest_model(MANIFEST_RENAME)
    record("app_rename_a.apk", {"classes.dex": [
        M_OBJ, M_INVOKE, ("Lcom/example/aaa/Alpha;", "doWork"),
        ("Lcom/example/aaa/Beta;", "helper")]})
    record("app_rename_b.apk", {"classes.dex": [
        M_OBJ, M_INVOKE, ("Lcom/example/zzz/Gamma;", "x1"),
        ("Lcom/example/zzz/DeltaLonger;", "y2longer")]})

    # 12: unordered multidex names to exercise numeric ordering
    write_zip(
        OUT / "app_multidex3_unordered.apk",
        [
            ("classes3.dex", build_dex([M_OBJ, ("Lcom/example/multi/C3;", "run")])),
            ("AndroidManifest.xml", MANIFEST_MULTI),
            ("classes.dex", multi1),
            ("classes2.dex", multi2),
        ],
    )
    manifests["app_multidex3_unordered.apk"] = oracle_manifest_model(MANIFEST_MULTI)
    record("app_multidex3_unordered.apk", {
        "classes.dex": [M_OBJ, ("Lcom/example/multi/A;", "run")],
        "classes2.dex": [M_OBJ, M_LOADER, ("Lcom/example/multi/B;", "run")],
        "classes3.dex": [M_OBJ, ("Lcom/example/multi/C3;", "run")],
    })

    # plain zips for the container unit tests
    write_zip(OUT / "minimal.zip", [("a.txt", b"hello droidrisk\n")],
              method=zipfile.ZIP_STORED)
    write_zip(OUT / "empty.zip", [])

    # valid zip, then one payload byte flipped: listing still reads, the
    # entry's crc check must fail
    bad_path = OUT / "app_badcrc.apk"
    marker = b"MARKERPAYLOADBYTES0123456789"
    write_zip(
        bad_path,
        [("AndroidManifest.xml", MANIFEST_PLAIN), ("marker.bin", marker)],
        method=zipfile.ZIP_STORED,
    )
    blob = bytearray(bad_path.read_bytes())
    pos = blob.find(marker)
    assert pos > 0
    blob[pos + 3] ^= 0xFF
    bad_path.write_bytes(bytes(blob))
    manifests["app_badcrc.apk"] = oracle_manifest_model(MANIFEST_PLAIN)

    # raw (non-zipped) parser inputs
    (OUT / "manifest_basic.xml").write_bytes(MANIFEST_BASIC.encode())
    (OUT / "manifest_basic.axml").write_bytes(axml_basic)
    (OUT / "manifest_rich.axml").write_bytes(axml_rich)
    (OUT / "basic.dex").write_bytes(basic_dex)

    listings = {
        p.name: zip_listing(p)
        for p in sorted(OUT.glob("*.apk")) + sorted(OUT.glob("*.zip"))
    }
    (OUT / "zip_listing.json").write_text(json.dumps(listings, indent=1, sort_keys=True))
    (OUT / "manifest_models.json").write_text(
        json.dumps(manifests, indent=1, sort_keys=True)
    )
    (OUT / "dex_methods.json").write_text(
        json.dumps(dex_methods, indent=1, sort_keys=True)
    )
    print("fixtures written to", OUT)


if __name__ == "__main__":
    main()
