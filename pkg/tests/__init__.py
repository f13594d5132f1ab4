"""Tests for the CV teleportation toolkit"""
