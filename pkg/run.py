"""
Layout Algebra - HTTP Service
JSON endpoints for the layout operators and their oracle checks
"""

import os
import logging
from datetime import datetime
from typing import Any, Dict

from flask import Flask, request, jsonify
from flask_cors import CORS

from config import get_config, setup_logging, validate_configuration
from core.diagnostics import OracleDiagnostics
from core.errors import LayoutError, ParseError
from core.inttuple import set_overflow_checking
from core.layout import Layout, coalesce
from modules import algebra, oracle
from modules.cli import COMMANDS, READERS
from modules.render import render

config = get_config()
setup_logging(config)
logger = logging.getLogger(__name__)

app = Flask(__name__)
CORS(app)

diagnostics = OracleDiagnostics(config.ORACLE_CONFIG)
set_overflow_checking(config.ALGEBRA_CONFIG["check_overflow"])

OPERATIONS = {command.name: command for command in COMMANDS}

# Operator name -> (algebra call, oracle check) for /api/check
CHECKS = {
    "compose": (lambda a, b, s: algebra.compose(a, b),
                lambda a, b, r, **kw: oracle.oracle_compose_check(a, b, r, **kw)),
    "divide": (lambda a, b, s: algebra.logical_divide(a, b, s["relaxed_complement"]),
               lambda a, b, r, **kw: oracle.oracle_divide_check(a, b, r, **kw)),
    "product": (lambda a, b, s: algebra.logical_product(a, b, s["relaxed_complement"]),
                lambda a, b, r, **kw: oracle.oracle_product_check(a, b, r, **kw)),
    "coalesce": (lambda a, b, s: coalesce(a),
                 lambda a, b, r, **kw: oracle.oracle_coalesce_check(a, r, **kw)),
    "rinv": (lambda a, b, s: algebra.right_inverse(a),
             lambda a, b, r, **kw: oracle.oracle_right_inverse_check(a, r, **kw)),
    "linv": (lambda a, b, s: algebra.left_inverse(a),
             lambda a, b, r, **kw: oracle.oracle_left_inverse_check(a, r, **kw)),
}
BINARY_CHECKS = {"compose", "divide", "product"}


def _settings(data: Dict[str, Any]) -> Dict[str, Any]:
    settings = {**config.ALGEBRA_CONFIG, **config.RENDER_CONFIG}
    settings["relaxed_complement"] = bool(data.get("relaxed_complement",
                                                   settings["relaxed_complement"]))
    return settings


def _error(e: Exception, status: int):
    return jsonify({
        "error": str(e),
        "type": type(e).__name__,
        "mode": getattr(e, "mode", None),
        "timestamp": datetime.now().isoformat()
    }), status


def _layout_error(e: LayoutError):
    # Unreadable input is the client's fault; a well-formed case outside an
    # operator's domain is reported as unprocessable.
    return _error(e, 400 if isinstance(e, ParseError) else 422)


@app.route('/', methods=['GET'])
def home():
    """Service description."""
    return jsonify({
        "name": config.APP_NAME,
        "version": config.VERSION,
        "operations": {command.name: command.help for command in COMMANDS},
        "checks": sorted(CHECKS),
        "endpoints": [
            "GET  /api/status",
            "POST /api/<operation>",
            "POST /api/check/<operation>"
        ],
        "timestamp": datetime.now().isoformat()
    })


@app.route('/api/status', methods=['GET'])
def get_status():
    """Configuration health and oracle agreement so far."""
    return jsonify({
        "status": "online",
        "version": config.VERSION,
        "configuration": validate_configuration(config),
        "oracle": diagnostics.summary(),
        "timestamp": datetime.now().isoformat()
    })


@app.route('/api/<operation>', methods=['POST'])
def run_operation(operation: str):
    """Run one operator on text-form inputs named like the CLI arguments."""
    command = OPERATIONS.get(operation)
    if command is None:
        return jsonify({
            "error": f"Unknown operation: {operation}",
            "available": sorted(OPERATIONS)
        }), 404

    data = request.get_json(silent=True) or {}
    missing = [dest for dest, _ in command.inputs if dest not in data]
    if missing:
        return jsonify({
            "error": f"Missing required field(s): {', '.join(missing)}",
            "required": [dest for dest, _ in command.inputs],
            "optional": [dest for dest, _ in command.optional]
        }), 400

    settings = _settings(data)
    try:
        inputs = {}
        for dest, kind in command.inputs + command.optional:
            if data.get(dest) is None:
                continue
            inputs[dest] = [int(v) for v in data[dest]] if kind == "ints" else READERS[kind](data[dest])
        result = command.run(settings, **inputs)
        response = {"operation": operation, "result": str(result)}
        if data.get("render") and isinstance(result, Layout):
            response["grid"] = render(result, settings["column_separator"], settings["max_cells"])
        logger.info(f"{operation} -> {response['result']}")
        return jsonify(response)

    except LayoutError as e:
        logger.info(f"{operation} rejected: {type(e).__name__}: {e}")
        return _layout_error(e)
    except (TypeError, ValueError) as e:
        return _error(e, 400)
    except Exception as e:
        logger.error(f"Operation error: {e}")
        return _error(e, 500)


@app.route('/api/check/<operation>', methods=['POST'])
def check_operation(operation: str):
    """Run an operator and compare its result with the function-table oracle."""
    if operation not in CHECKS:
        return jsonify({
            "error": f"No oracle check for: {operation}",
            "available": sorted(CHECKS)
        }), 404

    data = request.get_json(silent=True) or {}
    required = ["a", "b"] if operation in BINARY_CHECKS else ["a"]
    missing = [name for name in required if data.get(name) is None]
    if missing:
        return jsonify({"error": f"Missing required field(s): {', '.join(missing)}"}), 400

    settings = _settings(data)
    run, check = CHECKS[operation]
    try:
        a = READERS["layout"](data["a"])
        b = READERS["layout"](data["b"]) if operation in BINARY_CHECKS else None
        result = run(a, b, settings)
        agreed = check(a, b, result, diagnostics=diagnostics,
                       bound=config.ORACLE_CONFIG["table_bound"])
        return jsonify({
            "operation": operation,
            "result": str(result),
            "agreed": agreed,
            "tally": diagnostics.summary()["operations"]
        })

    except LayoutError as e:
        return _layout_error(e)
    except Exception as e:
        logger.error(f"Check error: {e}")
        return _error(e, 500)


def main():
    """Main application entry point."""
    port = int(os.environ.get('PORT', config.PORT))
    logger.info(f"Starting {config.APP_NAME} {config.VERSION} on {config.HOST}:{port}")
    app.run(
        host=config.HOST,
        port=port,
        debug=config.DEBUG
    )


if __name__ == '__main__':
    main()
