"""Shared utilities: logging, caching and configuration"""
