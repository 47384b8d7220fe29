"""Published JSON schemas for the stats report and scene payloads."""

STATS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "missview stats report",
    "type": "object",
    "required": ["variables", "pairs", "cm"],
    "additionalProperties": False,
    "properties": {
        "variables": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "kind", "am", "n_recorded"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "kind": {"enum": ["numeric", "categorical"]},
                    "am": {"type": "number", "minimum": 0, "maximum": 1},
                    "n_recorded": {"type": "integer", "minimum": 0},
                },
            },
        },
        "pairs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["a", "b", "jm", "expected_jm", "deviation"],
                "additionalProperties": False,
                "properties": {
                    "a": {"type": "string"},
                    "b": {"type": "string"},
                    "jm": {"type": "number", "minimum": 0, "maximum": 1},
                    "expected_jm": {"type": "number", "minimum": 0, "maximum": 1},
                    "deviation": {"type": "number", "minimum": -1, "maximum": 1},
                },
            },
        },
        "cm": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["selected", "target", "divergence", "defined"],
                "additionalProperties": False,
                "properties": {
                    "selected": {"type": "string"},
                    "target": {"type": "string"},
                    "divergence": {"type": "number", "minimum": 0, "maximum": 1},
                    "defined": {"type": "boolean"},
                },
            },
        },
    },
}

_GLYPH_SCHEMA = {
    "type": "object",
    "required": ["name", "x", "y", "w", "h", "am", "jm", "grey", "red", "selected"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "x": {"type": "number"},
        "y": {"type": "number"},
        "w": {"type": "number", "exclusiveMinimum": 0},
        "h": {"type": "number", "exclusiveMinimum": 0},
        "am": {"type": "number", "minimum": 0, "maximum": 1},
        "jm": {
            "oneOf": [
                {"type": "null"},
                {"type": "number", "minimum": 0, "maximum": 1},
            ]
        },
        "grey": {
            "type": "array",
            "items": {"type": "number", "minimum": 0, "maximum": 1},
        },
        "red": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "array",
                    "items": {"type": "number", "minimum": 0, "maximum": 1},
                },
            ]
        },
        "selected": {"type": "boolean"},
    },
}

SCENE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "missview glyph scene",
    "type": "object",
    "required": ["layout", "selection", "viewport", "glyphs", "links", "cells", "polylines"],
    "additionalProperties": False,
    "properties": {
        "layout": {"enum": ["linear", "radial", "heatmap", "pc"]},
        "selection": {"oneOf": [{"type": "null"}, {"type": "string"}]},
        "viewport": {
            "type": "object",
            "required": ["w", "h"],
            "additionalProperties": False,
            "properties": {
                "w": {"type": "number", "exclusiveMinimum": 0},
                "h": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "glyphs": {"type": "array", "items": _GLYPH_SCHEMA},
        "links": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["a", "b", "weight"],
                "additionalProperties": False,
                "properties": {
                    "a": {"type": "string"},
                    "b": {"type": "string"},
                    "weight": {"type": "number", "minimum": 0, "maximum": 1},
                },
            },
        },
        "cells": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["columns", "order", "levels", "x", "y", "w", "h"],
                    "additionalProperties": False,
                    "properties": {
                        "columns": {"type": "array", "items": {"type": "string"}},
                        "order": {"type": "array", "items": {"type": "integer"}},
                        "levels": {
                            "type": "array",
                            "items": {
                                "type": "array",
                                "items": {
                                    "oneOf": [
                                        {"type": "null"},
                                        {"type": "number", "minimum": 0, "maximum": 1},
                                    ]
                                },
                            },
                        },
                        "x": {"type": "number"},
                        "y": {"type": "number"},
                        "w": {"type": "number"},
                        "h": {"type": "number"},
                    },
                },
            ]
        },
        "polylines": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["item", "ys", "highlight"],
                "additionalProperties": False,
                "properties": {
                    "item": {"type": "integer", "minimum": 0},
                    "ys": {"type": "array", "items": {"type": "number"}},
                    "highlight": {"type": "boolean"},
                },
            },
        },
    },
}
