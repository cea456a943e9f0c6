"""Fuchsian Apparent-Singularity Engine - Python Version"""
