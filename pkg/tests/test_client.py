"""Remote client: wire parsing, basis conversion, archiving, error mapping."""

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from qfermat.client import NewformClient
from qfermat.errors import DataUnavailableError, ParseError


class _Handler(BaseHTTPRequestHandler):
    responses: dict[str, tuple[int, bytes]] = {}

    def do_GET(self):
        status, body = self.responses.get(self.path, (404, b"not found"))
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture(scope="module")
def server():
    httpd = ThreadingHTTPServer(("127.0.0.1", 0), _Handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{httpd.server_address[1]}"
    httpd.shutdown()
    thread.join()


def _serve(level: int, doc) -> str:
    path = f"/api/newforms?level={level}&weight=2"
    body = doc if isinstance(doc, bytes) else json.dumps(doc).encode()
    _Handler.responses[path] = (200, body)
    return path


def _doc(level=11, an=None, basis=None, dim=1, field=None):
    if an is None:
        an = [[[1, 1]], [[-2, 1]], [[-1, 1]], [[2, 1]]]
    return {
        "level": level,
        "weight": 2,
        "newforms": [
            {
                "label": f"{level}.2.a.a",
                "dimension": dim,
                "field_poly": field or [0, 1],
                "cm_discriminant": None,
                "basis_matrix": basis,
                "an": an,
            }
        ],
    }


def test_fetch_parses_power_basis_form(server):
    _serve(11, _doc())
    client = NewformClient(server, delay=0)
    (rec,) = client.fetch_level(11, min_an=4)
    assert rec.label == "11.2.a.a"
    assert rec.source == "remote"
    assert rec.a(2).coords == (-2,)
    assert rec.num_an == 4


def test_fetch_converts_basis_matrix_to_power_basis(server):
    # basis rows (1, 0) and (1, 2): stored coords (c0, c1) mean c0 + c1(1+2a)
    an = [
        [[1, 1], [0, 1]],   # a_1 = 1
        [[-1, 1], [1, 2]],  # a_2 = -1 + (1/2)(1 + 2 alpha) = -1/2 + alpha
        [[0, 1], [1, 1]],   # a_3 = 1 + 2 alpha
        [[0, 1], [0, 1]],
    ]
    _serve(21, _doc(level=21, an=an, basis=[[[1, 1], [0, 1]], [[1, 1], [2, 1]]],
                    dim=2, field=[-2, 0, 1]))
    client = NewformClient(server, delay=0)
    (rec,) = client.fetch_level(21, min_an=4)
    from fractions import Fraction

    assert rec.a(1).coords == (1, 0)
    assert rec.a(2).coords == (Fraction(-1, 2), 1)
    assert rec.a(3).coords == (1, 2)


def test_fetch_archives_raw_response(server, tmp_path):
    path = _serve(13, _doc(level=13))
    client = NewformClient(server, delay=0, archive_dir=tmp_path)
    client.fetch_level(13, min_an=4)
    archived = tmp_path / "level_13_response.json"
    assert archived.read_bytes() == _Handler.responses[path][1]


def test_fetch_maps_http_errors(server):
    client = NewformClient(server, delay=0)
    with pytest.raises(DataUnavailableError):
        client.fetch_level(999, min_an=4)  # 404


def test_fetch_maps_connection_errors():
    client = NewformClient("http://127.0.0.1:9", delay=0, timeout=2)
    with pytest.raises(DataUnavailableError):
        client.fetch_level(11, min_an=4)


def test_fetch_rejects_bad_payloads(server):
    client = NewformClient(server, delay=0)
    _serve(31, b"{broken")
    with pytest.raises(ParseError, match="JSON"):
        client.fetch_level(31, min_an=4)
    _serve(33, _doc(level=99))  # level mismatch
    with pytest.raises(ParseError, match="level"):
        client.fetch_level(33, min_an=4)
    doc = _doc(level=35)
    doc["weight"] = 4
    _serve(35, doc)
    with pytest.raises(ParseError, match="weight"):
        client.fetch_level(35, min_an=4)
    doc = _doc(level=37)
    doc["newforms"][0]["an"][1] = [[1, 0]]  # zero denominator
    _serve(37, doc)
    with pytest.raises(ParseError, match="num, den"):
        client.fetch_level(37, min_an=4)
    doc = _doc(level=39)
    doc["newforms"][0]["field_poly"] = [2, 2]  # not monic
    _serve(39, doc)
    with pytest.raises(ParseError, match="monic"):
        client.fetch_level(39, min_an=4)


def test_fetch_enforces_min_an(server):
    _serve(41, _doc(level=41))
    client = NewformClient(server, delay=0)
    with pytest.raises(ParseError, match="at least"):
        client.fetch_level(41, min_an=10)


def test_rate_limit_spaces_requests(server):
    _serve(43, _doc(level=43))
    client = NewformClient(server, delay=0.15)
    client.fetch_level(43, min_an=4)
    t0 = time.monotonic()
    client.fetch_level(43, min_an=4)
    assert time.monotonic() - t0 >= 0.1  # second call waited out the delay
