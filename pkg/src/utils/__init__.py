"""Configuration, errors, logging and numerical helpers"""
